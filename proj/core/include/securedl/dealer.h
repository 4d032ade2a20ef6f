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

#ifndef SECUREDL_DEALER_H_
#define SECUREDL_DEALER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "securedl/ring.h"

namespace securedl {

// Counts of each kind of correlated randomness.
struct TapeBudget {
  std::uint64_t triples = 0;
  std::uint64_t trunc_pairs = 0;
  std::uint64_t edabits = 0;

  TapeBudget& operator+=(const TapeBudget& o) {
    triples += o.triples;
    trunc_pairs += o.trunc_pairs;
    edabits += o.edabits;
    return *this;
  }
  friend TapeBudget operator+(TapeBudget a, const TapeBudget& b) {
    return a += b;
  }
  friend TapeBudget operator*(TapeBudget a, std::uint64_t k) {
    a.triples *= k;
    a.trunc_pairs *= k;
    a.edabits *= k;
    return a;
  }
  bool operator==(const TapeBudget&) const = default;
};

// One party's share of a Beaver triple (a, b, c = a * b).
struct TripleShare {
  RingElement a = 0;
  RingElement b = 0;
  RingElement c = 0;
};

// One party's share of (r, r >> f) with r uniform in [0, 2^63).
struct TruncPairShare {
  RingElement r = 0;
  RingElement r_shifted = 0;
};

inline constexpr int kEdaBitLength = 64;

// One party's share of a random r, both as a ring element and bit by bit
// (bits[j] is an arithmetic share of bit j of r).
struct EdaBitShare {
  RingElement r = 0;
  std::array<RingElement, kEdaBitLength> bits{};
};

// A party's queue of preprocessed material. Items are consumed front to back,
// each exactly once; running out throws PreprocessingExhausted.
class DealerTape {
 public:
  DealerTape() = default;

  int party_id() const { return party_id_; }
  int frac_bits() const { return frac_bits_; }

  TapeBudget capacity() const;
  TapeBudget consumed() const { return consumed_; }
  TapeBudget remaining() const;

  std::span<const TripleShare> TakeTriples(std::size_t count);
  std::span<const TruncPairShare> TakeTruncPairs(std::size_t count);
  const EdaBitShare& TakeEdaBit();

  void Write(std::ostream& out) const;
  static DealerTape Read(std::istream& in);

 private:
  friend std::vector<DealerTape> GenerateTapes(int, const TapeBudget&,
                                               std::uint64_t,
                                               const FixedPointCodec&);

  int party_id_ = 0;
  int frac_bits_ = 16;
  std::vector<TripleShare> triples_;
  std::vector<TruncPairShare> trunc_pairs_;
  std::vector<EdaBitShare> edabits_;
  TapeBudget consumed_;
};

// Trusted-dealer preprocessing: deterministic in `seed`.
std::vector<DealerTape> GenerateTapes(int parties, const TapeBudget& budget,
                                      std::uint64_t seed,
                                      const FixedPointCodec& codec);

}  // namespace securedl

#endif  // SECUREDL_DEALER_H_
