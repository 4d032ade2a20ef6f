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

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "securedl/errors.h"
#include "securedl/rng.h"

namespace securedl {
namespace {

TEST(ChiSquareTest, MatchesIndependentSurvivalFunction) {
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    std::array<std::uint64_t, 256> bins{};
    for (int i = 0; i < 20000; ++i) ++bins[rng() & 0xff];
    const ChiSquareResult r = ChiSquareUniformity(bins);
    EXPECT_EQ(r.degrees_of_freedom, 255);
    EXPECT_EQ(r.samples, 20000u);
    EXPECT_NEAR(r.p_value, oracle::ChiSquareSurvival(r.statistic, 255), 1e-9);
  }
}

TEST(ChiSquareTest, HandComputedStatistic) {
  // Observed (10, 30) against expected (20, 20): chi2 = 100/20 * 2 = 10.
  const std::array<std::uint64_t, 2> bins = {10, 30};
  const ChiSquareResult r = ChiSquareUniformity(bins);
  EXPECT_DOUBLE_EQ(r.statistic, 10.0);
  EXPECT_EQ(r.degrees_of_freedom, 1);
  EXPECT_NEAR(r.p_value, oracle::ChiSquareSurvival(10.0, 1), 1e-12);
  EXPECT_FALSE(r.Passes(0.01));
}

TEST(ChiSquareTest, SkewedHistogramFails) {
  std::array<std::uint64_t, 256> bins{};
  for (std::size_t i = 0; i < bins.size(); ++i) bins[i] = i < 128 ? 100 : 50;
  EXPECT_FALSE(ChiSquareUniformity(bins).Passes(0.01));
}

TEST(ChiSquareTest, EmptyHistogramPassesTrivially) {
  std::array<std::uint64_t, 256> bins{};
  const ChiSquareResult r = ChiSquareUniformity(bins);
  EXPECT_EQ(r.samples, 0u);
  EXPECT_TRUE(r.Passes(0.01));
}

TEST(TranscriptTest, CountsByKindAndCombines) {
  Transcript t;
  const std::vector<RingElement> a = {0x100, 0x201, 0x302};
  const std::vector<RingElement> b = {0xff};
  t.Record(OpenKind::kBeaverDelta, a);
  t.Record(OpenKind::kCompareMask, b);
  EXPECT_EQ(t.count(OpenKind::kBeaverDelta), 3u);
  EXPECT_EQ(t.count(OpenKind::kCompareMask), 1u);
  EXPECT_EQ(t.count(OpenKind::kTruncMask), 0u);
  EXPECT_EQ(t.total(), 4u);
  EXPECT_EQ(t.histogram(OpenKind::kBeaverDelta)[1], 1u);
  EXPECT_EQ(t.CombinedHistogram()[0xff], 1u);
}

TEST(TranscriptTest, MergeAddsHistogramsAndAppendsCaptures) {
  Transcript a(3), b(3);
  const std::vector<RingElement> x = {1, 2}, y = {3, 4};
  a.Record(OpenKind::kTruncMask, x);
  b.Record(OpenKind::kTruncMask, y);
  a.Merge(b);
  EXPECT_EQ(a.count(OpenKind::kTruncMask), 4u);
  ASSERT_EQ(a.captured().size(), 3u);
  EXPECT_EQ(a.captured()[2].value, 3u);
}

TEST(TranscriptTest, UniformOpeningsPassAudit) {
  Rng rng(2);
  Transcript t;
  std::vector<RingElement> v(100000);
  for (RingElement& e : v) e = rng();
  t.Record(OpenKind::kBeaverEpsilon, v);
  EXPECT_TRUE(t.Audit().Passes(0.01));
}

TEST(TranscriptDumpTest, RoundTrips) {
  Transcript t(10);
  const std::vector<RingElement> v = {7, 0xdeadbeefcafef00dull};
  t.Record(OpenKind::kCompareMask, v);
  std::stringstream buf;
  t.WriteDump(buf);
  const auto back = Transcript::ReadDump(buf);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].kind, OpenKind::kCompareMask);
  EXPECT_EQ(back[1].value, 0xdeadbeefcafef00dull);
  EXPECT_EQ(AuditWords(back).samples, 2u);
}

TEST(TranscriptDumpTest, ReportsParseOffsets) {
  {
    std::istringstream in("nope");
    try {
      Transcript::ReadDump(in);
      FAIL();
    } catch (const ParseError& e) {
      EXPECT_EQ(e.offset(), 0u);
    }
  }
  Transcript t(4);
  const std::vector<RingElement> v = {1, 2};
  t.Record(OpenKind::kTruncMask, v);
  std::ostringstream out;
  t.WriteDump(out);
  const std::string bytes = out.str();
  {
    std::istringstream in(bytes.substr(0, bytes.size() - 3));
    try {
      Transcript::ReadDump(in);
      FAIL();
    } catch (const ParseError& e) {
      EXPECT_EQ(e.offset(), 16u + 9u + 1u);
    }
  }
  {
    std::string bad = bytes;
    bad[16] = 9;
    std::istringstream in(bad);
    try {
      Transcript::ReadDump(in);
      FAIL();
    } catch (const ParseError& e) {
      EXPECT_EQ(e.offset(), 16u);
    }
  }
}

}  // namespace
}  // namespace securedl
