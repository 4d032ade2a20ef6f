/*
 * Copyright 2026 The securedl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SECUREDL_SECURE_LINALG_H_
#define SECUREDL_SECURE_LINALG_H_

#include <cstddef>

#include "securedl/dealer.h"
#include "securedl/mpc.h"
#include "securedl/sharing.h"

namespace securedl {

// Public parameters of the vector protocols. Every coordinate of an input is
// assumed to satisfy |w_k| <= clip_bound (enforced before sharing), which
// yields the public bounds the Newton iterations need.
struct LinalgParams {
  double clip_bound = 1.0;
  double norm_floor = 1e-3;
  int newton_iterations = kDefaultNewtonIterations;

  // Upper bound of a squared norm: d * G^2.
  double SquaredNormBound(std::size_t dim) const;
  // Public Heron starting point (d G^2)^(1/4): the geometric middle of the
  // norm range [1, sqrt(d) G].
  double SqrtInitialGuess(std::size_t dim) const;
  double SqrtInverseBound(std::size_t dim) const;
  // Bound c for inverting a product of two norms: d * G^2.
  double CosineInverseBound(std::size_t dim) const;
  // Bound c for inverting a single norm: sqrt(d) * G.
  double NormInverseBound(std::size_t dim) const;
};

struct NormResult {
  Sharing norm;
  // Public: the squared norm fell below norm_floor^2.
  bool degenerate = false;
};

struct CosineResult {
  Sharing cosine;
  bool degenerate = false;
};

struct NormalizeResult {
  Sharing vector;
  bool degenerate = false;
};

// <a, b>, truncated once after summation.
Sharing DotProduct(MpcSession& session, const Sharing& a, const Sharing& b);
// Sum of squares at scale 2^(2f) (not truncated).
Sharing SquaredSumRaw(MpcSession& session, const Sharing& a);
NormResult SecureNorm(MpcSession& session, const Sharing& a,
                      const LinalgParams& params);
CosineResult CosineSimilarity(MpcSession& session, const Sharing& a,
                              const Sharing& b, const LinalgParams& params);
// target * ||reference|| / ||target||. A degenerate target yields the zero
// vector and the flag. The ratio of norms must stay below 2^(k-f-1).
NormalizeResult L2Normalize(MpcSession& session, const Sharing& reference,
                            const Sharing& target, const LinalgParams& params);

// Preprocessing demand of each protocol for dimension `dim`.
TapeBudget DotProductCost(std::size_t dim);
TapeBudget SecureNormCost(std::size_t dim, const LinalgParams& params);
TapeBudget CosineCost(std::size_t dim, const LinalgParams& params);
TapeBudget L2NormalizeCost(std::size_t dim, const LinalgParams& params);

}  // namespace securedl

#endif  // SECUREDL_SECURE_LINALG_H_
