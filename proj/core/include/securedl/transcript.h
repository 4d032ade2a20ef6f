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

#ifndef SECUREDL_TRANSCRIPT_H_
#define SECUREDL_TRANSCRIPT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "securedl/ring.h"

namespace securedl {

// Kinds of masked values that are opened during the online phase. Output
// openings (the comparison bit, the aggregated model) are not masked and are
// never recorded here.
enum class OpenKind : std::uint8_t {
  kBeaverDelta = 0,
  kBeaverEpsilon = 1,
  kTruncMask = 2,
  kCompareMask = 3,
};
inline constexpr std::size_t kOpenKindCount = 4;
const char* OpenKindName(OpenKind kind);

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  std::uint64_t samples = 0;

  bool Passes(double alpha) const { return p_value >= alpha; }
};

// Pearson goodness-of-fit against the uniform distribution over the bins.
ChiSquareResult ChiSquareUniformity(std::span<const std::uint64_t> bins);

struct CapturedOpening {
  OpenKind kind;
  RingElement value;
};

// Record of everything opened in a run. Keeps a 256-bin histogram of the low
// byte per kind; optionally captures up to `capture_limit` raw words for
// dumping.
class Transcript {
 public:
  using Histogram = std::array<std::uint64_t, 256>;

  explicit Transcript(std::size_t capture_limit = 0)
      : capture_limit_(capture_limit) {}

  void Record(OpenKind kind, std::span<const RingElement> opened);
  // Appends `other` after this transcript's captures.
  void Merge(const Transcript& other);

  const Histogram& histogram(OpenKind kind) const {
    return histograms_[static_cast<std::size_t>(kind)];
  }
  Histogram CombinedHistogram() const;
  std::uint64_t count(OpenKind kind) const;
  std::uint64_t total() const;
  const std::vector<CapturedOpening>& captured() const { return captured_; }

  // Chi-square uniformity of the low byte over all recorded openings.
  ChiSquareResult Audit() const;

  // Binary dump: "SDLX", u32 version, u64 count, then count records of
  // (u8 kind, u64 value), little-endian.
  void WriteDump(std::ostream& out) const;
  static std::vector<CapturedOpening> ReadDump(std::istream& in);

 private:
  std::array<Histogram, kOpenKindCount> histograms_{};
  std::size_t capture_limit_ = 0;
  std::vector<CapturedOpening> captured_;
};

// Chi-square on the low byte of an arbitrary word sequence.
ChiSquareResult AuditWords(std::span<const CapturedOpening> words);

}  // namespace securedl

#endif  // SECUREDL_TRANSCRIPT_H_
