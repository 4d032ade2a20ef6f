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

#include "securedl/sharing.h"

#include <array>
#include <vector>

#include <gtest/gtest.h>

#include "securedl/errors.h"
#include "securedl/ring.h"
#include "securedl/rng.h"
#include "securedl/transcript.h"
#include "test_util.h"

namespace securedl {
namespace {

using test::OpenReal;
using test::ShareReal;

TEST(ShareTest, RoundTrips) {
  Rng rng(1);
  const std::vector<RingElement> secret = {EncodeFixed(5.0)};
  const auto shares = Share(secret, 3, rng);
  ASSERT_EQ(shares.size(), 3u);
  EXPECT_EQ(Reconstruct(shares), secret);
}

TEST(ShareTest, ZeroSplitsIntoOpposites) {
  Rng rng(2);
  const std::vector<RingElement> zero = {0};
  const auto shares = Share(zero, 2, rng);
  EXPECT_EQ(RingAdd(shares[0].elems[0], shares[1].elems[0]), 0u);
}

TEST(ShareTest, IsReproducibleFromSeed) {
  const std::vector<RingElement> secret = {1, 2, 3};
  Rng a(7), b(7);
  const auto sa = Share(secret, 4, a);
  const auto sb = Share(secret, 4, b);
  for (int p = 0; p < 4; ++p) EXPECT_EQ(sa[p].elems, sb[p].elems);
}

TEST(ShareTest, RandomVectorsRoundTrip) {
  Rng rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<RingElement> secret(17);
    for (RingElement& e : secret) e = rng();
    const int n = 2 + trial;
    EXPECT_EQ(Reconstruct(Share(secret, n, rng)), secret);
  }
}

TEST(ShareTest, RejectsFewerThanTwoParties) {
  Rng rng(4);
  const std::vector<RingElement> secret = {1};
  EXPECT_THROW(Share(secret, 1, rng), ConfigError);
}

TEST(ReconstructTest, RejectsMissingDuplicateAndMismatched) {
  Rng rng(5);
  const std::vector<RingElement> secret = {1, 2};
  auto shares = Share(secret, 3, rng);
  std::vector<ShareVector> missing = {shares[0], shares[2]};
  EXPECT_THROW(Reconstruct(missing), ProtocolError);
  EXPECT_THROW(Reconstruct(std::vector<ShareVector>{}), ProtocolError);
  std::vector<ShareVector> dup = {shares[0], shares[1], shares[1]};
  EXPECT_THROW(Reconstruct(dup), ProtocolError);
  shares[2].elems.pop_back();
  EXPECT_THROW(Reconstruct(shares), ProtocolError);
}

TEST(LocalOpsTest, AddSharedReconstructsToSum) {
  Rng rng(6);
  const Sharing x = ShareReal(2.0, 3, rng);
  const Sharing y = ShareReal(3.0, 3, rng);
  EXPECT_DOUBLE_EQ(OpenReal(Add(x, y)), 5.0);
  const Sharing zero = ShareReal(0.0, 3, rng);
  EXPECT_DOUBLE_EQ(OpenReal(Add(x, zero)), 2.0);
}

TEST(LocalOpsTest, PerPartyAddRequiresMatchingParty) {
  ShareVector a{0, {1, 2}};
  ShareVector b{1, {1, 2}};
  EXPECT_THROW(AddShared(a, b), ProtocolError);
  ShareVector c{0, {1}};
  EXPECT_THROW(AddShared(a, c), ProtocolError);
}

TEST(LocalOpsTest, AddPublicShiftsOnlyPartyZero) {
  Rng rng(7);
  const Sharing x = ShareReal(1.25, 4, rng);
  const Sharing y = AddPublic(x, EncodeFixed(0.5));
  EXPECT_DOUBLE_EQ(OpenReal(y), 1.75);
  for (int p = 1; p < 4; ++p) EXPECT_EQ(y.party(p).elems, x.party(p).elems);
}

TEST(LocalOpsTest, MulPublicScalesAndZeroes) {
  Rng rng(8);
  const Sharing x = ShareReal(-3.5, 3, rng);
  EXPECT_EQ(MulPublic(x, 0).Reconstruct(), std::vector<RingElement>{0});
  const FixedPointCodec codec;
  EXPECT_DOUBLE_EQ(codec.DecodeDoubleScale(
                       MulPublic(x, codec.Encode(1.0)).Reconstruct()[0]),
                   -3.5);
}

TEST(LocalOpsTest, LinearHomomorphismOnRandomCombinations) {
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const RingElement s1 = rng(), s2 = rng(), c1 = rng(), c2 = rng(),
                      k = rng();
    const Sharing a = Sharing::FromSecret(std::vector<RingElement>{s1}, 3, rng);
    const Sharing b = Sharing::FromSecret(std::vector<RingElement>{s2}, 3, rng);
    const Sharing combo = AddPublic(Add(MulPublic(a, c1), MulPublic(b, c2)), k);
    EXPECT_EQ(combo.Reconstruct()[0], c1 * s1 + c2 * s2 + k);
  }
}

TEST(LocalOpsTest, SumElementsAndPublicMinus) {
  Rng rng(10);
  const std::vector<double> v = {1.0, 2.0, -0.5};
  const Sharing x = test::ShareReals(v, 3, rng);
  EXPECT_DOUBLE_EQ(OpenReal(SumElements(x)), 2.5);
  EXPECT_DOUBLE_EQ(test::OpenReals(PublicMinus(EncodeFixed(1.0), x))[2], 1.5);
}

TEST(SharingPrivacyTest, AnyStrictSubsetOfSharesLooksUniform) {
  // Fixed secret; the low byte of every share except the last one must be
  // uniform.
  Rng rng(11);
  constexpr int kParties = 4;
  std::array<std::uint64_t, 256> bins{};
  const std::vector<RingElement> secret(1000, EncodeFixed(0.75));
  for (int round = 0; round < 34; ++round) {
    const auto shares = Share(secret, kParties, rng);
    for (int p = 0; p + 1 < kParties; ++p) {
      for (RingElement e : shares[static_cast<std::size_t>(p)].elems) {
        ++bins[e & 0xff];
      }
    }
  }
  const ChiSquareResult r = ChiSquareUniformity(bins);
  EXPECT_GE(r.samples, 100000u);
  EXPECT_TRUE(r.Passes(0.01)) << "chi2=" << r.statistic << " p=" << r.p_value;
}

TEST(SharingPrivacyTest, LastShareAloneAlsoLooksUniform) {
  Rng rng(12);
  std::array<std::uint64_t, 256> bins{};
  const std::vector<RingElement> secret(100000, EncodeFixed(0.75));
  const auto shares = Share(secret, 2, rng);
  for (RingElement e : shares[1].elems) ++bins[e & 0xff];
  EXPECT_TRUE(ChiSquareUniformity(bins).Passes(0.01));
}

}  // namespace
}  // namespace securedl
