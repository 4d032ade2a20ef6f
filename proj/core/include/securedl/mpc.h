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

#ifndef SECUREDL_MPC_H_
#define SECUREDL_MPC_H_

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "securedl/dealer.h"
#include "securedl/ring.h"
#include "securedl/sharing.h"
#include "securedl/transcript.h"
#include "securedl/transport.h"

namespace securedl {

inline constexpr int kDefaultNewtonIterations = 15;

// Per-party halves of the online protocols. A party only ever sees its own
// share, its own preprocessing and the opened values.
namespace party_step {

// Beaver: party p broadcasts (x_p - a_p, y_p - b_p).
void BeaverMask(const ShareVector& x, const ShareVector& y,
                std::span<const TripleShare> triples, ShareVector& delta,
                ShareVector& epsilon);
// w_p = c_p + delta * b_p + eps * a_p (+ delta * eps on party 0).
ShareVector BeaverCombine(int party, std::span<const TripleShare> triples,
                          std::span<const RingElement> delta,
                          std::span<const RingElement> epsilon);

// Truncation: party p broadcasts x_p + r_p (party 0 also adds the offset that
// makes the masked value non-negative).
ShareVector TruncMask(const ShareVector& x,
                      std::span<const TruncPairShare> pairs,
                      RingElement offset);
ShareVector TruncCombine(int party, std::span<const TruncPairShare> pairs,
                         std::span<const RingElement> opened, int frac_bits,
                         RingElement offset);

}  // namespace party_step

// Preprocessing consumed by each online operation on `count` elements. The
// simulator sizes dealer tapes from these; tests hold them equal to the
// tapes' consumption counters.
TapeBudget BeaverMulCost(std::size_t count = 1);
TapeBudget TruncateCost(std::size_t count = 1);
TapeBudget MulFixedCost(std::size_t count = 1);
TapeBudget CompareCost();
TapeBudget InverseCost(int iterations = kDefaultNewtonIterations,
                       std::size_t count = 1);
TapeBudget SqrtCost(int iterations = kDefaultNewtonIterations,
                    int inverse_iterations = kDefaultNewtonIterations,
                    std::size_t count = 1);

// Public inverse bound that keeps every Heron iterate x_n inside the Newton
// convergence region (0, 2c) for inputs y <= y_max.
double SqrtInverseBound(double x0, double y_max);

// One protocol instance: the n parties' dealer tapes, the transport they
// open values over and the transcript of everything opened. Operations run
// in lockstep for all parties; each opening is a barrier on the transport.
class MpcSession {
 public:
  MpcSession(std::span<DealerTape> tapes, const FixedPointCodec& codec,
             Transcript* transcript = nullptr);

  int parties() const { return static_cast<int>(tapes_.size()); }
  const FixedPointCodec& codec() const { return codec_; }

  // Public fixed-point constant broadcast to `count` coordinates.
  Sharing Constant(double value, std::size_t count = 1) const;

  // Raw ring product (scale doubles for fixed-point inputs). A length-1
  // operand is broadcast against the other.
  Sharing BeaverMul(const Sharing& x, const Sharing& y);
  // Rescales a product at 2^(2f) back to 2^f; within one unit of
  // floor(x / 2^f). Caller guarantees the real value is in legal range.
  Sharing Truncate(const Sharing& x);
  Sharing MulFixed(const Sharing& x, const Sharing& y);
  // Multiplication by a public real followed by truncation.
  Sharing ScaleFixed(const Sharing& x, double c);

  // 1 iff signed(x) < signed(t), opened to all parties. x is a scalar; the
  // comparison is on raw ring values, so it works at any fixed-point scale.
  bool CompareLtPublic(const Sharing& x, RingElement t);

  // Newton iteration for 1/x elementwise. Requires 0 < x < 2 * bound (not
  // checked: checking would leak).
  Sharing SecureInverse(const Sharing& x, double bound,
                        int iterations = kDefaultNewtonIterations);
  // Heron iteration x <- (x + y / x) / 2 from the public guess x0, with each
  // division done by SecureInverse under `inverse_bound`.
  Sharing SecureSqrt(const Sharing& y, double x0, double inverse_bound,
                     int iterations = kDefaultNewtonIterations,
                     int inverse_iterations = kDefaultNewtonIterations);

  // Opens an output value (not masked, not recorded in the transcript).
  std::vector<RingElement> OpenOutput(const Sharing& x);

  TapeBudget consumed() const;
  const TransportStats& transport_stats() const { return transport_.stats(); }
  std::chrono::nanoseconds beaver_time() const { return beaver_time_; }

 private:
  std::vector<std::span<const TripleShare>> TakeTriples(std::size_t count);
  std::vector<std::span<const TruncPairShare>> TakeTruncPairs(
      std::size_t count);
  std::vector<RingElement> OpenMasked(OpenKind kind, const Sharing& masked);
  void CheckLockstep() const;

  std::span<DealerTape> tapes_;
  FixedPointCodec codec_;
  Transcript* transcript_;
  Transport transport_;
  std::chrono::nanoseconds beaver_time_{0};
};

}  // namespace securedl

#endif  // SECUREDL_MPC_H_
