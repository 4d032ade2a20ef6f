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

#include "securedl/mpc.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "securedl/errors.h"

namespace securedl {
namespace party_step {

void BeaverMask(const ShareVector& x, const ShareVector& y,
                std::span<const TripleShare> triples, ShareVector& delta,
                ShareVector& epsilon) {
  const std::size_t n = triples.size();
  delta.party_id = x.party_id;
  epsilon.party_id = x.party_id;
  delta.elems.resize(n);
  epsilon.elems.resize(n);
  const bool x_scalar = x.size() == 1;
  const bool y_scalar = y.size() == 1;
  for (std::size_t i = 0; i < n; ++i) {
    delta.elems[i] = x.elems[x_scalar ? 0 : i] - triples[i].a;
    epsilon.elems[i] = y.elems[y_scalar ? 0 : i] - triples[i].b;
  }
}

ShareVector BeaverCombine(int party, std::span<const TripleShare> triples,
                          std::span<const RingElement> delta,
                          std::span<const RingElement> epsilon) {
  ShareVector out{party, std::vector<RingElement>(triples.size())};
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const TripleShare& t = triples[i];
    RingElement w = t.c + delta[i] * t.b + epsilon[i] * t.a;
    if (party == 0) w += epsilon[i] * delta[i];
    out.elems[i] = w;
  }
  return out;
}

ShareVector TruncMask(const ShareVector& x,
                      std::span<const TruncPairShare> pairs,
                      RingElement offset) {
  ShareVector out{x.party_id, std::vector<RingElement>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.elems[i] = x.elems[i] + pairs[i].r;
    if (x.party_id == 0) out.elems[i] += offset;
  }
  return out;
}

ShareVector TruncCombine(int party, std::span<const TruncPairShare> pairs,
                         std::span<const RingElement> opened, int frac_bits,
                         RingElement offset) {
  ShareVector out{party, std::vector<RingElement>(pairs.size())};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    RingElement v = RingNeg(pairs[i].r_shifted);
    if (party == 0) v += (opened[i] >> frac_bits) - (offset >> frac_bits);
    out.elems[i] = v;
  }
  return out;
}

}  // namespace party_step

TapeBudget BeaverMulCost(std::size_t count) { return {count, 0, 0}; }

TapeBudget TruncateCost(std::size_t count) { return {0, count, 0}; }

TapeBudget MulFixedCost(std::size_t count) {
  return BeaverMulCost(count) + TruncateCost(count);
}

TapeBudget CompareCost() {
  // 62 ANDs for the prefix-OR over the low 63 bits, one for the final XOR.
  return {kEdaBitLength - 1, 0, 1};
}

TapeBudget InverseCost(int iterations, std::size_t count) {
  return MulFixedCost(count) * (2 * static_cast<std::uint64_t>(iterations));
}

TapeBudget SqrtCost(int iterations, int inverse_iterations,
                    std::size_t count) {
  const TapeBudget per_step = InverseCost(inverse_iterations, count) +
                              MulFixedCost(count) + TruncateCost(count);
  return per_step * static_cast<std::uint64_t>(iterations);
}

double SqrtInverseBound(double x0, double y_max) {
  return std::max(x0, 0.5 * (x0 + y_max / x0));
}

MpcSession::MpcSession(std::span<DealerTape> tapes,
                       const FixedPointCodec& codec, Transcript* transcript)
    : tapes_(tapes),
      codec_(codec),
      transcript_(transcript),
      transport_(static_cast<int>(tapes.size())) {
  if (tapes_.size() < 2) {
    throw ConfigError("an MPC session needs at least 2 parties");
  }
  for (std::size_t p = 0; p < tapes_.size(); ++p) {
    if (tapes_[p].party_id() != static_cast<int>(p)) {
      throw ProtocolError("dealer tapes must be ordered by party id");
    }
    if (tapes_[p].frac_bits() != codec_.frac_bits) {
      throw ProtocolError("dealer tape truncation pairs were generated for "
                          "a different fixed-point precision");
    }
  }
  CheckLockstep();
}

void MpcSession::CheckLockstep() const {
  const TapeBudget first = tapes_.front().consumed();
  for (const DealerTape& t : tapes_) {
    if (!(t.consumed() == first)) {
      throw ProtocolError("dealer tapes out of lockstep: party " +
                          std::to_string(t.party_id()) +
                          " consumed a different preprocessing index");
    }
  }
}

TapeBudget MpcSession::consumed() const { return tapes_.front().consumed(); }

Sharing MpcSession::Constant(double value, std::size_t count) const {
  std::vector<RingElement> v(count, codec_.Encode(value));
  return Sharing::Public(parties(), v);
}

std::vector<std::span<const TripleShare>> MpcSession::TakeTriples(
    std::size_t count) {
  CheckLockstep();
  std::vector<std::span<const TripleShare>> out;
  out.reserve(tapes_.size());
  for (DealerTape& t : tapes_) out.push_back(t.TakeTriples(count));
  return out;
}

std::vector<std::span<const TruncPairShare>> MpcSession::TakeTruncPairs(
    std::size_t count) {
  CheckLockstep();
  std::vector<std::span<const TruncPairShare>> out;
  out.reserve(tapes_.size());
  for (DealerTape& t : tapes_) out.push_back(t.TakeTruncPairs(count));
  return out;
}

std::vector<RingElement> MpcSession::OpenMasked(OpenKind kind,
                                                const Sharing& masked) {
  std::vector<RingElement> opened = transport_.Open(masked);
  if (transcript_ != nullptr) transcript_->Record(kind, opened);
  return opened;
}

std::vector<RingElement> MpcSession::OpenOutput(const Sharing& x) {
  return transport_.Open(x);
}

Sharing MpcSession::BeaverMul(const Sharing& x, const Sharing& y) {
  if (x.parties() != parties() || y.parties() != parties()) {
    throw ProtocolError("beaver_mul: operand shared over wrong party count");
  }
  const std::size_t n = std::max(x.size(), y.size());
  if ((x.size() != n && x.size() != 1) || (y.size() != n && y.size() != 1)) {
    throw ProtocolError("beaver_mul: operand lengths " +
                        std::to_string(x.size()) + " and " +
                        std::to_string(y.size()) + " do not match");
  }
  const auto start = std::chrono::steady_clock::now();
  auto triples = TakeTriples(n);

  Sharing delta(parties(), n);
  Sharing epsilon(parties(), n);
  for (int p = 0; p < parties(); ++p) {
    party_step::BeaverMask(x.party(p), y.party(p),
                           triples[static_cast<std::size_t>(p)],
                           delta.party(p), epsilon.party(p));
  }
  const std::vector<RingElement> d = OpenMasked(OpenKind::kBeaverDelta, delta);
  const std::vector<RingElement> e =
      OpenMasked(OpenKind::kBeaverEpsilon, epsilon);

  std::vector<ShareVector> out;
  out.reserve(static_cast<std::size_t>(parties()));
  for (int p = 0; p < parties(); ++p) {
    out.push_back(party_step::BeaverCombine(
        p, triples[static_cast<std::size_t>(p)], d, e));
  }
  beaver_time_ += std::chrono::steady_clock::now() - start;
  return Sharing(std::move(out));
}

Sharing MpcSession::Truncate(const Sharing& x) {
  const std::size_t n = x.size();
  auto pairs = TakeTruncPairs(n);
  // Shifting by the legal bound makes the masked value a non-negative
  // integer below 2^(k+f), so adding r < 2^63 never wraps.
  const RingElement offset =
      static_cast<RingElement>(codec_.DoubleScaleBound());

  Sharing masked(parties(), n);
  for (int p = 0; p < parties(); ++p) {
    masked.party(p) = party_step::TruncMask(
        x.party(p), pairs[static_cast<std::size_t>(p)], offset);
  }
  const std::vector<RingElement> opened =
      OpenMasked(OpenKind::kTruncMask, masked);

  std::vector<ShareVector> out;
  out.reserve(static_cast<std::size_t>(parties()));
  for (int p = 0; p < parties(); ++p) {
    out.push_back(party_step::TruncCombine(
        p, pairs[static_cast<std::size_t>(p)], opened, codec_.frac_bits,
        offset));
  }
  return Sharing(std::move(out));
}

Sharing MpcSession::MulFixed(const Sharing& x, const Sharing& y) {
  return Truncate(BeaverMul(x, y));
}

Sharing MpcSession::ScaleFixed(const Sharing& x, double c) {
  return Truncate(MulPublic(x, codec_.Encode(c)));
}

bool MpcSession::CompareLtPublic(const Sharing& x, RingElement t) {
  if (x.size() != 1) {
    throw ProtocolError("compare: expected a shared scalar, got length " +
                        std::to_string(x.size()));
  }
  CheckLockstep();
  std::vector<const EdaBitShare*> eda;
  eda.reserve(tapes_.size());
  for (DealerTape& tape : tapes_) eda.push_back(&tape.TakeEdaBit());

  // z = x - t; the answer is the sign bit of z. Open a = z + r.
  const Sharing z = AddPublic(x, RingNeg(t));
  Sharing masked(parties(), 1);
  for (int p = 0; p < parties(); ++p) {
    masked.party(p).elems[0] =
        z.party(p).elems[0] + eda[static_cast<std::size_t>(p)]->r;
  }
  const RingElement a = OpenMasked(OpenKind::kCompareMask, masked)[0];

  // z = a - r mod 2^64, so msb(z) = msb(a) xor msb(r) xor borrow, where
  // borrow = [low63(a) < low63(r)]: the subtraction is reduced by 2^63.
  auto bit_of_r = [&](int j) {
    Sharing s(parties(), 1);
    for (int p = 0; p < parties(); ++p) {
      s.party(p).elems[0] =
          eda[static_cast<std::size_t>(p)]->bits[static_cast<std::size_t>(j)];
    }
    return s;
  };

  // Scan from the most significant of the low 63 bits. prefix = OR of
  // e_j = a_j xor r_j over the bits seen so far; the first differing bit
  // decides, and there a_j = 0 means low63(a) < low63(r).
  Sharing prefix(parties(), 1);
  Sharing borrow(parties(), 1);
  for (int j = kEdaBitLength - 2; j >= 0; --j) {
    const bool a_bit = ((a >> j) & 1u) != 0;
    Sharing r_bit = bit_of_r(j);
    Sharing e = a_bit ? PublicMinus(1, r_bit) : std::move(r_bit);
    Sharing next = (j == kEdaBitLength - 2)
                       ? e
                       : Sub(Add(prefix, e), BeaverMul(prefix, e));
    if (!a_bit) borrow = Add(borrow, Sub(next, prefix));
    prefix = std::move(next);
  }

  const Sharing r_msb = bit_of_r(kEdaBitLength - 1);
  // r_msb xor borrow = r + b - 2 r b
  Sharing s = Sub(Add(r_msb, borrow), MulPublic(BeaverMul(r_msb, borrow), 2));
  const bool a_msb = (a >> (kEdaBitLength - 1)) != 0;
  if (a_msb) s = PublicMinus(1, s);

  const RingElement bit = OpenOutput(s)[0];
  if (bit > 1) {
    throw ProtocolError("compare: opened a non-bit value; preprocessing is "
                        "inconsistent");
  }
  return bit == 1;
}

Sharing MpcSession::SecureInverse(const Sharing& x, double bound,
                                  int iterations) {
  if (!(bound > 0.0) || iterations < 0) {
    throw ConfigError("secure_inverse needs bound > 0 and iterations >= 0");
  }
  const RingElement initial = codec_.Encode(1.0 / bound);
  if (initial == 0) {
    throw ConfigError("secure_inverse: 1/bound underflows the fixed-point "
                      "precision (bound " + std::to_string(bound) + ")");
  }
  const RingElement two = codec_.Encode(2.0);
  // B_0 = 1/c; M_s = B_s * X; B_{s+1} = B_s (2 - M_s).
  Sharing b = Sharing::Public(parties(),
                              std::vector<RingElement>(x.size(), initial));
  for (int s = 0; s < iterations; ++s) {
    const Sharing m = MulFixed(b, x);
    b = MulFixed(b, PublicMinus(two, m));
  }
  return b;
}

Sharing MpcSession::SecureSqrt(const Sharing& y, double x0,
                               double inverse_bound, int iterations,
                               int inverse_iterations) {
  if (!(x0 > 0.0)) throw ConfigError("secure_sqrt needs x0 > 0");
  Sharing x = Constant(x0, y.size());
  for (int n = 0; n < iterations; ++n) {
    const Sharing inv = SecureInverse(x, inverse_bound, inverse_iterations);
    const Sharing quotient = MulFixed(y, inv);
    x = ScaleFixed(Add(x, quotient), 0.5);
  }
  return x;
}

}  // namespace securedl
