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

#include "securedl/attacks.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "securedl/errors.h"
#include "securedl/rng.h"

namespace securedl {
namespace {

TEST(AttackNamesTest, RoundTrip) {
  for (const char* name : {"none", "sf", "noise", "sa", "lf", "combi"}) {
    EXPECT_EQ(AttackName(ParseAttackKind(name)), name);
  }
  EXPECT_THROW(ParseAttackKind("backdoor"), ConfigError);
}

TEST(SignFlipTest, Examples) {
  const std::vector<double> u = {1.0, -2.0};
  EXPECT_EQ(SignFlip(u), (std::vector<double>{-1.0, 2.0}));
  EXPECT_EQ(SignFlip(std::vector<double>{0.0})[0], 0.0);
  EXPECT_EQ(SignFlip(SignFlip(u)), u);
}

TEST(GaussianAttackTest, MomentsMatchParameters) {
  Rng rng(1);
  const auto v = GaussianAttack(100000, rng);
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size() - 1);
  EXPECT_NEAR(mean, 0.1, 0.01);
  EXPECT_NEAR(var, 0.1, 0.01);
}

TEST(GaussianAttackTest, ReproducibleFromSeed) {
  Rng a(2), b(2);
  EXPECT_EQ(GaussianAttack(50, a), GaussianAttack(50, b));
}

TEST(ScalingAttackTest, Examples) {
  const std::vector<double> unit = {0.6, 0.8};
  EXPECT_NEAR(oracle::Norm(ScalingAttack(unit, 100.0)), 100.0, 1e-12);
  EXPECT_EQ(ScalingAttack(unit, 1.0), unit);
}

TEST(LabelFlipTest, Examples) {
  EXPECT_EQ(LabelFlip(3, 10), 6);
  EXPECT_EQ(LabelFlip(9, 10), 0);
  for (int l = 0; l < 10; ++l) EXPECT_EQ(LabelFlip(LabelFlip(l, 10), 10), l);
  EXPECT_THROW(LabelFlip(10, 10), ConfigError);
}

TEST(LabelFlipDatasetTest, FlipsLabelsOnly) {
  Dataset d;
  d.feature_dim = 1;
  d.num_classes = 4;
  d.features = {0.5f, 0.25f};
  d.labels = {0, 2};
  const Dataset f = LabelFlipDataset(d);
  EXPECT_EQ(f.labels, (std::vector<int>{3, 1}));
  EXPECT_EQ(f.features, d.features);
}

TEST(AttackSpecTest, ValidatesByzantineIds) {
  AttackSpec s;
  s.kind = AttackKind::kSignFlip;
  s.byzantine = {0, 3};
  EXPECT_NO_THROW(s.Validate(4));
  EXPECT_THROW(s.Validate(3), ConfigError);
  s.byzantine = {1, 1};
  EXPECT_THROW(s.Validate(4), ConfigError);
  EXPECT_TRUE(s.IsByzantine(1));
  EXPECT_FALSE(s.IsByzantine(0));
}

TEST(PoisonUpdateTest, SingleAttacks) {
  Rng rng(3);
  const std::vector<double> u = {0.5, -0.25};
  AttackSpec s;
  s.kind = AttackKind::kNone;
  EXPECT_EQ(PoisonUpdate(s, u, rng), u);
  s.kind = AttackKind::kLabelFlip;
  EXPECT_EQ(PoisonUpdate(s, u, rng), u);
  EXPECT_TRUE(s.PoisonsData());
  s.kind = AttackKind::kSignFlip;
  EXPECT_EQ(PoisonUpdate(s, u, rng), SignFlip(u));
  s.kind = AttackKind::kScaling;
  EXPECT_EQ(PoisonUpdate(s, u, rng), ScalingAttack(u, 100.0));
  s.kind = AttackKind::kGaussian;
  EXPECT_EQ(PoisonUpdate(s, u, rng).size(), 2u);
}

TEST(PoisonUpdateTest, CombinationAppliesInOrder) {
  const std::vector<double> u = {0.5, -0.25};
  AttackSpec s;
  s.kind = AttackKind::kCombination;
  s.combination = {AttackKind::kSignFlip};
  Rng rng(4);
  EXPECT_EQ(PoisonUpdate(s, u, rng), SignFlip(u));
  s.combination = {};
  EXPECT_EQ(PoisonUpdate(s, u, rng), u);
  EXPECT_FALSE(s.PoisonsData());
  // Full default chain: label flip is data-side; the update sees -100 u plus
  // noise with the configured mean.
  s = AttackSpec{};
  s.kind = AttackKind::kCombination;
  EXPECT_TRUE(s.PoisonsData());
  Rng a(5), b(5);
  const auto out = PoisonUpdate(s, u, a);
  const auto noise = GaussianAttack(2, b);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_NEAR(out[i], -100.0 * u[i] + noise[i], 1e-12);
  }
  Rng c(5);
  EXPECT_EQ(PoisonUpdate(s, u, c), out);
}

}  // namespace
}  // namespace securedl
