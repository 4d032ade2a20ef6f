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

#include "securedl/secure_linalg.h"

#include <cmath>
#include <string>
#include <vector>

#include "securedl/errors.h"

namespace securedl {
namespace {

void CheckDims(const Sharing& a, const Sharing& b) {
  if (a.size() != b.size()) {
    throw ProtocolError("dimension mismatch: " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
  }
  if (a.size() == 0) throw ProtocolError("empty vector");
}

// Public threshold floor^2 at scale 2^(2f).
RingElement SquaredFloorRaw(const FixedPointCodec& codec, double floor) {
  return FromSigned(std::llround(floor * floor * codec.Scale() * codec.Scale()));
}

// Concatenates scalar sharings into one vector sharing so the Newton
// iterations for both run in a single batch.
Sharing Stack(const Sharing& a, const Sharing& b) {
  Sharing out(a.parties(), a.size() + b.size());
  for (int p = 0; p < a.parties(); ++p) {
    auto& dst = out.party(p).elems;
    const auto& x = a.party(p).elems;
    const auto& y = b.party(p).elems;
    std::copy(x.begin(), x.end(), dst.begin());
    std::copy(y.begin(), y.end(), dst.begin() + static_cast<long>(x.size()));
  }
  return out;
}

Sharing Element(const Sharing& a, std::size_t i) {
  Sharing out(a.parties(), 1);
  for (int p = 0; p < a.parties(); ++p) {
    out.party(p).elems[0] = a.party(p).elems[i];
  }
  return out;
}

// Squared sums, degeneracy checks and batched square roots of a and b.
struct PairNorms {
  Sharing norms;  // length 2: ||a||, ||b||
  bool degenerate_a = false;
  bool degenerate_b = false;
};

PairNorms NormsOfPair(MpcSession& session, const Sharing& a, const Sharing& b,
                      const LinalgParams& params) {
  const std::size_t dim = a.size();
  const Sharing sum_a = SquaredSumRaw(session, a);
  const Sharing sum_b = SquaredSumRaw(session, b);
  const RingElement floor_raw =
      SquaredFloorRaw(session.codec(), params.norm_floor);
  PairNorms out;
  out.degenerate_a = session.CompareLtPublic(sum_a, floor_raw);
  out.degenerate_b = session.CompareLtPublic(sum_b, floor_raw);
  const Sharing sums = session.Truncate(Stack(sum_a, sum_b));
  out.norms = session.SecureSqrt(sums, params.SqrtInitialGuess(dim),
                                 params.SqrtInverseBound(dim),
                                 params.newton_iterations,
                                 params.newton_iterations);
  return out;
}

TapeBudget PairNormsCost(std::size_t dim, const LinalgParams& params) {
  return BeaverMulCost(2 * dim) + CompareCost() * 2 + TruncateCost(2) +
         SqrtCost(params.newton_iterations, params.newton_iterations, 2);
}

}  // namespace

double LinalgParams::SquaredNormBound(std::size_t dim) const {
  return static_cast<double>(dim) * clip_bound * clip_bound;
}

double LinalgParams::SqrtInitialGuess(std::size_t dim) const {
  return std::sqrt(std::sqrt(SquaredNormBound(dim)));
}

double LinalgParams::SqrtInverseBound(std::size_t dim) const {
  return securedl::SqrtInverseBound(SqrtInitialGuess(dim),
                                    SquaredNormBound(dim));
}

double LinalgParams::CosineInverseBound(std::size_t dim) const {
  return SquaredNormBound(dim);
}

double LinalgParams::NormInverseBound(std::size_t dim) const {
  return std::sqrt(SquaredNormBound(dim));
}

Sharing SquaredSumRaw(MpcSession& session, const Sharing& a) {
  return SumElements(session.BeaverMul(a, a));
}

Sharing DotProduct(MpcSession& session, const Sharing& a, const Sharing& b) {
  CheckDims(a, b);
  return session.Truncate(SumElements(session.BeaverMul(a, b)));
}

NormResult SecureNorm(MpcSession& session, const Sharing& a,
                      const LinalgParams& params) {
  if (a.size() == 0) throw ProtocolError("empty vector");
  const Sharing sum = SquaredSumRaw(session, a);
  NormResult out;
  out.degenerate = session.CompareLtPublic(
      sum, SquaredFloorRaw(session.codec(), params.norm_floor));
  out.norm = session.SecureSqrt(session.Truncate(sum),
                                params.SqrtInitialGuess(a.size()),
                                params.SqrtInverseBound(a.size()),
                                params.newton_iterations,
                                params.newton_iterations);
  return out;
}

CosineResult CosineSimilarity(MpcSession& session, const Sharing& a,
                              const Sharing& b, const LinalgParams& params) {
  CheckDims(a, b);
  const std::size_t dim = a.size();
  const Sharing dot = DotProduct(session, a, b);
  const PairNorms norms = NormsOfPair(session, a, b, params);
  CosineResult out;
  out.degenerate = norms.degenerate_a || norms.degenerate_b;
  if (out.degenerate) {
    out.cosine = Sharing(session.parties(), 1);
    return out;
  }
  const Sharing product = session.MulFixed(Element(norms.norms, 0),
                                           Element(norms.norms, 1));
  const Sharing denominator = session.SecureInverse(
      product, params.CosineInverseBound(dim), params.newton_iterations);
  out.cosine = session.MulFixed(dot, denominator);
  return out;
}

NormalizeResult L2Normalize(MpcSession& session, const Sharing& reference,
                            const Sharing& target, const LinalgParams& params) {
  CheckDims(reference, target);
  const std::size_t dim = target.size();
  const PairNorms norms = NormsOfPair(session, target, reference, params);
  NormalizeResult out;
  out.degenerate = norms.degenerate_a;
  if (out.degenerate) {
    out.vector = Sharing(session.parties(), dim);
    return out;
  }
  const Sharing inverse_target = session.SecureInverse(
      Element(norms.norms, 0), params.NormInverseBound(dim),
      params.newton_iterations);
  const Sharing ratio =
      session.MulFixed(Element(norms.norms, 1), inverse_target);
  out.vector = session.MulFixed(target, ratio);
  return out;
}

TapeBudget DotProductCost(std::size_t dim) {
  return BeaverMulCost(dim) + TruncateCost(1);
}

TapeBudget SecureNormCost(std::size_t dim, const LinalgParams& params) {
  return BeaverMulCost(dim) + CompareCost() + TruncateCost(1) +
         SqrtCost(params.newton_iterations, params.newton_iterations, 1);
}

TapeBudget CosineCost(std::size_t dim, const LinalgParams& params) {
  return DotProductCost(dim) + PairNormsCost(dim, params) + MulFixedCost(1) +
         InverseCost(params.newton_iterations, 1) + MulFixedCost(1);
}

TapeBudget L2NormalizeCost(std::size_t dim, const LinalgParams& params) {
  return PairNormsCost(dim, params) + InverseCost(params.newton_iterations, 1) +
         MulFixedCost(1) + MulFixedCost(dim);
}

}  // namespace securedl
