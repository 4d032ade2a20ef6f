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

#include "securedl/dealer.h"

#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "securedl/errors.h"
#include "securedl/rng.h"

namespace securedl {
namespace {

constexpr char kTapeMagic[4] = {'S', 'D', 'L', 'T'};
constexpr std::uint32_t kTapeVersion = 1;

void PutU32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void PutU64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint64_t U64() { return Bytes(8); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Bytes(4)); }
  void Magic() {
    char m[4];
    in_.read(m, 4);
    if (!in_ || std::memcmp(m, kTapeMagic, 4) != 0) {
      throw ParseError("bad dealer tape magic", offset_);
    }
    offset_ += 4;
  }
  std::size_t offset() const { return offset_; }

 private:
  std::uint64_t Bytes(int n) {
    unsigned char b[8] = {};
    in_.read(reinterpret_cast<char*>(b), n);
    if (!in_) throw ParseError("truncated dealer tape", offset_);
    offset_ += static_cast<std::size_t>(n);
    std::uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  std::istream& in_;
  std::size_t offset_ = 0;
};

// Fills `out[p]` for all parties with shares of `secret`.
template <typename Setter>
void SplitInto(RingElement secret, int parties, Rng& rng, Setter set) {
  RingElement acc = 0;
  for (int p = 0; p + 1 < parties; ++p) {
    RingElement s = rng();
    acc += s;
    set(p, s);
  }
  set(parties - 1, secret - acc);
}

}  // namespace

TapeBudget DealerTape::capacity() const {
  return {triples_.size(), trunc_pairs_.size(), edabits_.size()};
}

TapeBudget DealerTape::remaining() const {
  TapeBudget cap = capacity();
  return {cap.triples - consumed_.triples,
          cap.trunc_pairs - consumed_.trunc_pairs,
          cap.edabits - consumed_.edabits};
}

std::span<const TripleShare> DealerTape::TakeTriples(std::size_t count) {
  if (consumed_.triples + count > triples_.size()) {
    throw PreprocessingExhausted("beaver triples");
  }
  std::span<const TripleShare> out(triples_.data() + consumed_.triples, count);
  consumed_.triples += count;
  return out;
}

std::span<const TruncPairShare> DealerTape::TakeTruncPairs(std::size_t count) {
  if (consumed_.trunc_pairs + count > trunc_pairs_.size()) {
    throw PreprocessingExhausted("truncation pairs");
  }
  std::span<const TruncPairShare> out(
      trunc_pairs_.data() + consumed_.trunc_pairs, count);
  consumed_.trunc_pairs += count;
  return out;
}

const EdaBitShare& DealerTape::TakeEdaBit() {
  if (consumed_.edabits >= edabits_.size()) {
    throw PreprocessingExhausted("edabits");
  }
  return edabits_[consumed_.edabits++];
}

void DealerTape::Write(std::ostream& out) const {
  out.write(kTapeMagic, 4);
  PutU32(out, kTapeVersion);
  PutU32(out, static_cast<std::uint32_t>(party_id_));
  PutU32(out, static_cast<std::uint32_t>(frac_bits_));
  PutU64(out, triples_.size());
  PutU64(out, trunc_pairs_.size());
  PutU64(out, edabits_.size());
  PutU64(out, consumed_.triples);
  PutU64(out, consumed_.trunc_pairs);
  PutU64(out, consumed_.edabits);
  for (const TripleShare& t : triples_) {
    PutU64(out, t.a);
    PutU64(out, t.b);
    PutU64(out, t.c);
  }
  for (const TruncPairShare& t : trunc_pairs_) {
    PutU64(out, t.r);
    PutU64(out, t.r_shifted);
  }
  for (const EdaBitShare& e : edabits_) {
    PutU64(out, e.r);
    for (RingElement b : e.bits) PutU64(out, b);
  }
}

DealerTape DealerTape::Read(std::istream& in) {
  Reader r(in);
  r.Magic();
  if (std::uint32_t v = r.U32(); v != kTapeVersion) {
    throw ParseError("unsupported dealer tape version " + std::to_string(v),
                     r.offset() - 4);
  }
  DealerTape tape;
  tape.party_id_ = static_cast<int>(r.U32());
  tape.frac_bits_ = static_cast<int>(r.U32());
  const std::uint64_t triples = r.U64();
  const std::uint64_t pairs = r.U64();
  const std::uint64_t edabits = r.U64();
  tape.consumed_.triples = r.U64();
  tape.consumed_.trunc_pairs = r.U64();
  tape.consumed_.edabits = r.U64();
  if (tape.consumed_.triples > triples || tape.consumed_.trunc_pairs > pairs ||
      tape.consumed_.edabits > edabits) {
    throw ParseError("dealer tape consumption exceeds capacity", r.offset());
  }
  tape.triples_.resize(triples);
  for (TripleShare& t : tape.triples_) {
    t.a = r.U64();
    t.b = r.U64();
    t.c = r.U64();
  }
  tape.trunc_pairs_.resize(pairs);
  for (TruncPairShare& t : tape.trunc_pairs_) {
    t.r = r.U64();
    t.r_shifted = r.U64();
  }
  tape.edabits_.resize(edabits);
  for (EdaBitShare& e : tape.edabits_) {
    e.r = r.U64();
    for (RingElement& b : e.bits) b = r.U64();
  }
  return tape;
}

std::vector<DealerTape> GenerateTapes(int parties, const TapeBudget& budget,
                                      std::uint64_t seed,
                                      const FixedPointCodec& codec) {
  if (parties < 2) {
    throw ConfigError("dealer needs at least 2 parties, got " +
                      std::to_string(parties));
  }
  codec.Validate();
  const auto n = static_cast<std::size_t>(parties);
  std::vector<DealerTape> tapes(n);
  for (std::size_t p = 0; p < n; ++p) {
    tapes[p].party_id_ = static_cast<int>(p);
    tapes[p].frac_bits_ = codec.frac_bits;
    tapes[p].triples_.resize(budget.triples);
    tapes[p].trunc_pairs_.resize(budget.trunc_pairs);
    tapes[p].edabits_.resize(budget.edabits);
  }

  Rng rng = DeriveRng(seed, {Tag(Stream::kDealer)});
  for (std::size_t i = 0; i < budget.triples; ++i) {
    RingElement a = 0;
    RingElement b = 0;
    for (std::size_t p = 0; p < n; ++p) {
      TripleShare& t = tapes[p].triples_[i];
      t.a = rng();
      t.b = rng();
      a += t.a;
      b += t.b;
    }
    SplitInto(a * b, parties, rng, [&](int p, RingElement s) {
      tapes[static_cast<std::size_t>(p)].triples_[i].c = s;
    });
  }
  for (std::size_t i = 0; i < budget.trunc_pairs; ++i) {
    const RingElement r = rng() >> 1;
    const RingElement r_shifted = r >> codec.frac_bits;
    SplitInto(r, parties, rng, [&](int p, RingElement s) {
      tapes[static_cast<std::size_t>(p)].trunc_pairs_[i].r = s;
    });
    SplitInto(r_shifted, parties, rng, [&](int p, RingElement s) {
      tapes[static_cast<std::size_t>(p)].trunc_pairs_[i].r_shifted = s;
    });
  }
  for (std::size_t i = 0; i < budget.edabits; ++i) {
    const RingElement r = rng();
    SplitInto(r, parties, rng, [&](int p, RingElement s) {
      tapes[static_cast<std::size_t>(p)].edabits_[i].r = s;
    });
    for (int j = 0; j < kEdaBitLength; ++j) {
      SplitInto((r >> j) & 1u, parties, rng, [&](int p, RingElement s) {
        tapes[static_cast<std::size_t>(p)].edabits_[i].bits[
            static_cast<std::size_t>(j)] = s;
      });
    }
  }
  return tapes;
}

}  // namespace securedl
