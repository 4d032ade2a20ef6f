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

#include "securedl/transcript.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cstring>
#include <istream>
#include <ostream>

#include "securedl/errors.h"

namespace securedl {
namespace {

constexpr char kDumpMagic[4] = {'S', 'D', 'L', 'X'};
constexpr std::uint32_t kDumpVersion = 1;

}  // namespace

const char* OpenKindName(OpenKind kind) {
  switch (kind) {
    case OpenKind::kBeaverDelta:
      return "beaver_delta";
    case OpenKind::kBeaverEpsilon:
      return "beaver_epsilon";
    case OpenKind::kTruncMask:
      return "trunc_mask";
    case OpenKind::kCompareMask:
      return "compare_mask";
  }
  return "unknown";
}

ChiSquareResult ChiSquareUniformity(std::span<const std::uint64_t> bins) {
  ChiSquareResult result;
  if (bins.size() < 2) return result;
  for (std::uint64_t b : bins) result.samples += b;
  result.degrees_of_freedom = static_cast<int>(bins.size()) - 1;
  if (result.samples == 0) return result;
  const double expected =
      static_cast<double>(result.samples) / static_cast<double>(bins.size());
  for (std::uint64_t b : bins) {
    const double diff = static_cast<double>(b) - expected;
    result.statistic += diff * diff / expected;
  }
  boost::math::chi_squared dist(result.degrees_of_freedom);
  result.p_value = boost::math::cdf(complement(dist, result.statistic));
  return result;
}

void Transcript::Record(OpenKind kind, std::span<const RingElement> opened) {
  Histogram& h = histograms_[static_cast<std::size_t>(kind)];
  for (RingElement v : opened) ++h[v & 0xffu];
  if (captured_.size() < capture_limit_) {
    for (RingElement v : opened) {
      if (captured_.size() >= capture_limit_) break;
      captured_.push_back({kind, v});
    }
  }
}

void Transcript::Merge(const Transcript& other) {
  for (std::size_t k = 0; k < kOpenKindCount; ++k) {
    for (std::size_t b = 0; b < 256; ++b) {
      histograms_[k][b] += other.histograms_[k][b];
    }
  }
  for (const CapturedOpening& c : other.captured_) {
    if (captured_.size() >= capture_limit_) break;
    captured_.push_back(c);
  }
}

Transcript::Histogram Transcript::CombinedHistogram() const {
  Histogram out{};
  for (const Histogram& h : histograms_) {
    for (std::size_t b = 0; b < 256; ++b) out[b] += h[b];
  }
  return out;
}

std::uint64_t Transcript::count(OpenKind kind) const {
  std::uint64_t n = 0;
  for (std::uint64_t b : histogram(kind)) n += b;
  return n;
}

std::uint64_t Transcript::total() const {
  std::uint64_t n = 0;
  for (std::uint64_t b : CombinedHistogram()) n += b;
  return n;
}

ChiSquareResult Transcript::Audit() const {
  const Histogram h = CombinedHistogram();
  return ChiSquareUniformity(h);
}

void Transcript::WriteDump(std::ostream& out) const {
  auto put = [&out](std::uint64_t v, int bytes) {
    unsigned char b[8];
    for (int i = 0; i < bytes; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), bytes);
  };
  out.write(kDumpMagic, 4);
  put(kDumpVersion, 4);
  put(captured_.size(), 8);
  for (const CapturedOpening& c : captured_) {
    put(static_cast<std::uint8_t>(c.kind), 1);
    put(c.value, 8);
  }
}

std::vector<CapturedOpening> Transcript::ReadDump(std::istream& in) {
  std::size_t offset = 0;
  auto get = [&in, &offset](int bytes) {
    unsigned char b[8] = {};
    in.read(reinterpret_cast<char*>(b), bytes);
    if (!in) throw ParseError("truncated transcript dump", offset);
    offset += static_cast<std::size_t>(bytes);
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  };
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kDumpMagic, 4) != 0) {
    throw ParseError("bad transcript dump magic", 0);
  }
  offset = 4;
  if (get(4) != kDumpVersion) {
    throw ParseError("unsupported transcript dump version", 4);
  }
  const std::uint64_t count = get(8);
  std::vector<CapturedOpening> out;
  // The count is untrusted; grow as records actually arrive.
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)));
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t kind = get(1);
    if (kind >= kOpenKindCount) {
      throw ParseError("unknown opening kind " + std::to_string(kind),
                       offset - 1);
    }
    out.push_back({static_cast<OpenKind>(kind), get(8)});
  }
  return out;
}

ChiSquareResult AuditWords(std::span<const CapturedOpening> words) {
  Transcript::Histogram h{};
  for (const CapturedOpening& w : words) ++h[w.value & 0xffu];
  return ChiSquareUniformity(h);
}

}  // namespace securedl
