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

#include "securedl/securedl_rule.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "securedl/errors.h"
#include "securedl/rng.h"
#include "test_util.h"

namespace securedl {
namespace {

struct Outcome {
  AggregationDecision decision;
  SecureDlStats stats;
};

// Shares every vector over n = received.size() + 1 parties and runs the rule
// for receiver 0.
Outcome RunRule(const Vector& own, const std::vector<Vector>& received,
                const SecureDlParams& params, std::uint64_t seed) {
  const int n = static_cast<int>(received.size()) + 1;
  Rng rng(seed);
  const Sharing own_shared = test::ShareReals(own, n, rng, params.codec);
  std::vector<Sharing> shared;
  std::vector<int> ids;
  for (std::size_t j = 0; j < received.size(); ++j) {
    shared.push_back(test::ShareReals(received[j], n, rng, params.codec));
    ids.push_back(static_cast<int>(j) + 1);
  }
  Outcome out;
  out.decision = SecureDlAggregate(
      0, own_shared, shared, ids, params,
      SeededTapeProvider(n, seed + 1, params.codec), nullptr, &out.stats);
  return out;
}

TEST(SecureDlParamsTest, Validates) {
  SecureDlParams p;
  EXPECT_NO_THROW(p.Validate());
  p.tau = 1.0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

TEST(SecureDlRuleTest, IdenticalUpdatesReturnThatUpdate) {
  Rng rng(1);
  const Vector v = test::UniformVector(32, -1.0, 1.0, rng);
  for (double tau : {0.0, 0.5, 0.9}) {
    SecureDlParams params;
    params.tau = tau;
    const Outcome o = RunRule(v, {v, v, v}, params, 2);
    for (bool a : o.decision.accepted) EXPECT_TRUE(a);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_NEAR(o.decision.aggregate[i], v[i], 1e-2);
    }
  }
}

TEST(SecureDlRuleTest, RejectsSignFlippedSender) {
  Rng rng(3);
  const Vector own = test::UniformVector(32, -1.0, 1.0, rng);
  Vector flipped(own);
  for (double& x : flipped) x = -x;
  Vector near(own);
  for (double& x : near) x *= 0.5;
  SecureDlParams params;
  params.divide_by_accepted = false;
  const Outcome o = RunRule(own, {near, flipped}, params, 4);
  ASSERT_EQ(o.decision.senders, (std::vector<int>{1, 2}));
  EXPECT_TRUE(o.decision.accepted[0]);
  EXPECT_FALSE(o.decision.accepted[1]);
  // (own + normalized(near)) / 3 = 2 own / 3.
  for (std::size_t i = 0; i < own.size(); ++i) {
    EXPECT_NEAR(o.decision.aggregate[i], 2.0 * own[i] / 3.0, 1e-2);
  }
}

TEST(SecureDlRuleTest, ScaledSendersAreNormEqualized) {
  Rng rng(5);
  constexpr std::size_t kDim = 32;
  const Vector own = test::UniformVector(kDim, -0.01, 0.01, rng);
  std::vector<Vector> received;
  for (int j = 0; j < 3; ++j) {
    received.push_back(test::UniformVector(kDim, -0.01, 0.01, rng));
  }
  for (int j = 0; j < 2; ++j) {
    Vector s = test::UniformVector(kDim, -0.01, 0.01, rng);
    for (double& x : s) x *= 100.0;
    received.push_back(s);
  }
  for (bool by_accepted : {true, false}) {
    SecureDlParams params;
    params.divide_by_accepted = by_accepted;
    const Outcome o = RunRule(own, received, params, 6);
    const auto ref = oracle::SecureDlReference(
        own, received, params.tau, params.linalg.norm_floor, by_accepted);
    EXPECT_EQ(o.decision.accepted, ref.accepted);
    for (std::size_t i = 0; i < kDim; ++i) {
      EXPECT_NEAR(o.decision.aggregate[i], ref.aggregate[i], 5e-2);
    }
  }
}

TEST(SecureDlRuleTest, MatchesReferenceOnRandomInstances) {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector own = test::UniformVector(24, -1.0, 1.0, rng);
    std::vector<Vector> received;
    for (int j = 0; j < 4; ++j) {
      // Mix of aligned and opposed senders.
      Vector u = test::UniformVector(24, -0.5, 0.5, rng);
      const double sign = (j + trial) % 3 == 0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += sign * 0.5 * own[i];
      received.push_back(u);
    }
    SecureDlParams params;
    params.tau = 0.1 * trial;
    const Outcome o = RunRule(own, received, params, 8 + trial);
    const auto ref = oracle::SecureDlReference(
        own, received, params.tau, params.linalg.norm_floor, true);
    EXPECT_EQ(o.decision.accepted, ref.accepted);
    for (std::size_t i = 0; i < own.size(); ++i) {
      EXPECT_NEAR(o.decision.aggregate[i], ref.aggregate[i], 2e-2);
    }
  }
}

TEST(SecureDlRuleTest, EqualNormsAllAcceptedReducesToMean) {
  // Coordinate permutations of one vector share its norm.
  const Vector a = {0.9, 0.5, 0.1, 0.3};
  const Vector b = {0.5, 0.9, 0.3, 0.1};
  const Vector c = {0.3, 0.1, 0.9, 0.5};
  SecureDlParams params;
  const Outcome o = RunRule(a, {b, c}, params, 20);
  const Vector mean = MeanAggregate(std::vector<Vector>{a, b, c});
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(o.decision.aggregate[i], mean[i], 1e-2);
  }
}

TEST(SecureDlRuleTest, ZeroSenderIsRejectedAsDegenerate) {
  const Vector own = {0.5, 0.5, 0.5};
  const Vector zero = {0.0, 0.0, 0.0};
  const Outcome o = RunRule(own, {zero, own}, SecureDlParams{}, 21);
  EXPECT_FALSE(o.decision.accepted[0]);
  EXPECT_TRUE(o.decision.accepted[1]);
  EXPECT_EQ(o.stats.degenerate, 1);
  for (std::size_t i = 0; i < own.size(); ++i) {
    EXPECT_NEAR(o.decision.aggregate[i], own[i], 1e-2);
  }
}

TEST(SecureDlRuleTest, ConsumptionMatchesCostModel) {
  Rng rng(22);
  const Vector own = test::UniformVector(16, -1.0, 1.0, rng);
  const Vector other = test::UniformVector(16, 0.0, 1.0, rng);
  Vector flipped(own);
  for (double& x : flipped) x = -x;
  SecureDlParams params;
  {
    const Outcome o = RunRule(own, {own, own}, params, 23);
    EXPECT_EQ(o.stats.provisioned, SecureDlReceiverCost(16, 2, params.linalg));
    EXPECT_EQ(o.stats.consumed, o.stats.provisioned);
  }
  {
    // A rejected sender skips normalization, so it consumes strictly less.
    const Outcome o = RunRule(own, {flipped, other}, params, 24);
    EXPECT_FALSE(o.decision.accepted[0]);
    EXPECT_EQ(o.stats.provisioned, SecureDlReceiverCost(16, 2, params.linalg));
    EXPECT_LT(o.stats.consumed.triples, o.stats.provisioned.triples);
  }
}

TEST(SecureDlRuleTest, CostDecomposesPerPair) {
  const LinalgParams lp;
  EXPECT_EQ(SecureDlReceiverCost(10, 3, lp),
            SecureDlPairCost(10, lp) * 3 + SecureDlAverageCost(10));
  EXPECT_EQ(SecureDlAverageCost(10), TruncateCost(10));
}

TEST(SecureDlRuleTest, RejectsMismatchedSenderIds) {
  Rng rng(25);
  const Vector v = {0.1};
  const Sharing s = test::ShareReals(v, 2, rng);
  const std::vector<Sharing> received = {s};
  const std::vector<int> ids = {1, 2};
  EXPECT_THROW(SecureDlAggregate(0, s, received, ids, SecureDlParams{},
                                 SeededTapeProvider(2, 1, FixedPointCodec{})),
               ConfigError);
}

TEST(SecureDlRuleTest, OutputNormStaysNearReceiverNorm) {
  // With every sender accepted, the output is an average of vectors of the
  // receiver's norm, so its norm cannot exceed it by more than rounding.
  Rng rng(26);
  const Vector own = test::UniformVector(32, 0.0, 1.0, rng);
  std::vector<Vector> received;
  for (int j = 0; j < 4; ++j) {
    received.push_back(test::UniformVector(32, 0.0, 0.02 * (j + 1), rng));
  }
  const Outcome o = RunRule(own, received, SecureDlParams{}, 27);
  EXPECT_LE(oracle::Norm(o.decision.aggregate), 1.02 * oracle::Norm(own));
}

}  // namespace
}  // namespace securedl
