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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "securedl/errors.h"
#include "securedl/rng.h"
#include "test_util.h"

namespace securedl {
namespace {

using test::OpenReal;
using test::OpenReals;
using test::ShareReals;
using test::TestSession;

constexpr int kParties = 3;

// Enough material for any single protocol below at dimension <= 256.
TapeBudget Plenty(std::size_t dim, const LinalgParams& p) {
  return CosineCost(dim, p) + L2NormalizeCost(dim, p) + SecureNormCost(dim, p);
}

TEST(DotProductTest, MatchesPlaintext) {
  TestSession ts(kParties, DotProductCost(64), 1);
  Rng rng(2);
  const auto a = test::UniformVector(64, -1.0, 1.0, rng);
  const auto b = test::UniformVector(64, -1.0, 1.0, rng);
  EXPECT_NEAR(OpenReal(DotProduct(ts.session, ShareReals(a, kParties, rng),
                                  ShareReals(b, kParties, rng))),
              oracle::Dot(a, b), 1e-3);
  EXPECT_EQ(ts.session.consumed(), DotProductCost(64));
}

TEST(DotProductTest, RejectsDimensionMismatch) {
  TestSession ts(kParties, DotProductCost(3), 3);
  Rng rng(4);
  const std::vector<double> a = {1, 2}, b = {1, 2, 3};
  EXPECT_THROW(DotProduct(ts.session, ShareReals(a, kParties, rng),
                          ShareReals(b, kParties, rng)),
               ProtocolError);
}

TEST(SecureNormTest, ThreeFourZero) {
  LinalgParams params;
  params.clip_bound = 4.0;
  TestSession ts(kParties, SecureNormCost(3, params), 5);
  Rng rng(6);
  const std::vector<double> v = {3.0, 4.0, 0.0};
  const NormResult r = SecureNorm(ts.session, ShareReals(v, kParties, rng),
                                  params);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(OpenReal(r.norm), 5.0, 5e-3);
  EXPECT_EQ(ts.session.consumed(), SecureNormCost(3, params));
}

TEST(SecureNormTest, FlagsZeroVector) {
  LinalgParams params;
  TestSession ts(kParties, SecureNormCost(8, params), 7);
  Rng rng(8);
  const std::vector<double> v(8, 0.0);
  EXPECT_TRUE(
      SecureNorm(ts.session, ShareReals(v, kParties, rng), params).degenerate);
}

TEST(CosineTest, ParallelAntiParallelOrthogonal) {
  LinalgParams params;
  TestSession ts(kParties, CosineCost(4, params) * 3, 9);
  Rng rng(10);
  const std::vector<double> a = {0.5, -0.25, 0.75, 0.1};
  std::vector<double> neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  const std::vector<double> e1 = {1, 0, 0, 0}, e2 = {0, 1, 0, 0};
  auto cos = [&](const std::vector<double>& x, const std::vector<double>& y) {
    const CosineResult r = CosineSimilarity(
        ts.session, ShareReals(x, kParties, rng), ShareReals(y, kParties, rng),
        params);
    EXPECT_FALSE(r.degenerate);
    return OpenReal(r.cosine);
  };
  EXPECT_NEAR(cos(a, a), 1.0, 1e-2);
  EXPECT_NEAR(cos(a, neg), -1.0, 1e-2);
  EXPECT_NEAR(cos(e1, e2), 0.0, 1e-2);
}

TEST(CosineTest, RandomPairsWithinTolerance) {
  LinalgParams params;
  constexpr std::size_t kDim = 64;
  constexpr int kPairs = 20;
  TestSession ts(kParties, CosineCost(kDim, params) * kPairs, 11);
  Rng rng(12);
  for (int i = 0; i < kPairs; ++i) {
    const auto a = test::UniformVector(kDim, -1.0, 1.0, rng);
    const auto b = test::UniformVector(kDim, -1.0, 1.0, rng);
    const CosineResult r = CosineSimilarity(
        ts.session, ShareReals(a, kParties, rng), ShareReals(b, kParties, rng),
        params);
    EXPECT_NEAR(OpenReal(r.cosine), oracle::Cosine(a, b), 1e-2);
  }
  EXPECT_EQ(ts.session.consumed(), CosineCost(kDim, params) * kPairs);
}

TEST(CosineTest, IsScaleInvariant) {
  LinalgParams params;
  TestSession ts(kParties, CosineCost(16, params) * 2, 13);
  Rng rng(14);
  const auto a = test::UniformVector(16, -0.5, 0.5, rng);
  const auto b = test::UniformVector(16, -0.5, 0.5, rng);
  std::vector<double> a2(a);
  for (double& x : a2) x *= 2.0;
  const double c1 = OpenReal(CosineSimilarity(ts.session,
                                              ShareReals(a, kParties, rng),
                                              ShareReals(b, kParties, rng),
                                              params)
                                 .cosine);
  const double c2 = OpenReal(CosineSimilarity(ts.session,
                                              ShareReals(a2, kParties, rng),
                                              ShareReals(b, kParties, rng),
                                              params)
                                 .cosine);
  EXPECT_NEAR(c1, c2, 1e-2);
}

TEST(CosineTest, DegenerateInputSkipsTheDivision) {
  LinalgParams params;
  TestSession ts(kParties, Plenty(8, params), 15);
  Rng rng(16);
  const std::vector<double> zero(8, 0.0), one(8, 0.5);
  const CosineResult r = CosineSimilarity(
      ts.session, ShareReals(zero, kParties, rng),
      ShareReals(one, kParties, rng), params);
  EXPECT_TRUE(r.degenerate);
  EXPECT_DOUBLE_EQ(OpenReal(r.cosine), 0.0);
}

TEST(L2NormalizeTest, RescalesToReferenceNorm) {
  LinalgParams params;
  constexpr std::size_t kDim = 64;
  TestSession ts(kParties, L2NormalizeCost(kDim, params) * 2, 17);
  Rng rng(18);
  const auto ref = test::UniformVector(kDim, -1.0, 1.0, rng);
  auto target = test::UniformVector(kDim, -0.05, 0.05, rng);
  const NormalizeResult r =
      L2Normalize(ts.session, ShareReals(ref, kParties, rng),
                  ShareReals(target, kParties, rng), params);
  ASSERT_FALSE(r.degenerate);
  const auto out = OpenReals(r.vector);
  const double ratio = oracle::Norm(out) / oracle::Norm(ref);
  EXPECT_GE(ratio, 0.98);
  EXPECT_LE(ratio, 1.02);
  EXPECT_NEAR(oracle::Cosine(out, target), 1.0, 1e-3);
  // Idempotent: normalizing the result again changes nothing material.
  const auto again = OpenReals(
      L2Normalize(ts.session, ShareReals(ref, kParties, rng),
                  ShareReals(out, kParties, rng), params)
          .vector);
  for (std::size_t i = 0; i < kDim; ++i) EXPECT_NEAR(again[i], out[i], 1e-2);
  EXPECT_EQ(ts.session.consumed(), L2NormalizeCost(kDim, params) * 2);
}

TEST(L2NormalizeTest, DegenerateTargetYieldsZero) {
  LinalgParams params;
  TestSession ts(kParties, L2NormalizeCost(4, params), 19);
  Rng rng(20);
  const std::vector<double> ref = {1, 1, 1, 1}, zero(4, 0.0);
  const NormalizeResult r = L2Normalize(
      ts.session, ShareReals(ref, kParties, rng),
      ShareReals(zero, kParties, rng), params);
  EXPECT_TRUE(r.degenerate);
  for (double x : OpenReals(r.vector)) EXPECT_DOUBLE_EQ(x, 0.0);
}

TEST(LinalgParamsTest, PublicBounds) {
  LinalgParams p;
  p.clip_bound = 2.0;
  EXPECT_DOUBLE_EQ(p.SquaredNormBound(4), 16.0);
  EXPECT_DOUBLE_EQ(p.SqrtInitialGuess(4), 2.0);
  EXPECT_DOUBLE_EQ(p.CosineInverseBound(4), 16.0);
  EXPECT_DOUBLE_EQ(p.NormInverseBound(4), 4.0);
  EXPECT_DOUBLE_EQ(p.SqrtInverseBound(4), 5.0);
}

}  // namespace
}  // namespace securedl
