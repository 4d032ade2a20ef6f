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

#ifndef SECUREDL_AGGREGATION_H_
#define SECUREDL_AGGREGATION_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace securedl {

using Vector = std::vector<double>;

enum class RuleKind { kMean, kDKrum, kDMedian, kBridge, kMozi, kSecureDl };

RuleKind ParseRuleKind(const std::string& name);
std::string RuleName(RuleKind kind);

// Tagged aggregation rule with its parameters.
struct AggregationRule {
  RuleKind kind = RuleKind::kMean;
  // SecureDL rejection threshold, in [0, 1).
  double tau = 0.0;
  // SecureDL divisor: accepted senders plus one (default), or n. Dividing by
  // n shrinks the model by the rejected fraction every round.
  bool divide_by_accepted = true;
  // BRIDGE: values trimmed from each end, k < n/2.
  int trim = 0;
  // DKrum: assumed Byzantine count, needs n - f - 2 >= 1.
  int krum_f = 0;
  // Mozi: fraction of received updates kept by the distance stage, and the
  // size of the local batch used to evaluate candidate losses.
  double mozi_rho = 0.5;
  int mozi_batch = 64;

  // `inputs` is the number of updates a receiver aggregates (own included).
  void Validate(int inputs) const;
};

// Records which senders a receiver accepted and the resulting model.
struct AggregationDecision {
  int receiver = 0;
  std::vector<int> senders;
  std::vector<bool> accepted;
  Vector aggregate;
};

Vector MeanAggregate(std::span<const Vector> updates);

// Krum scores: sum of squared distances to the n - f - 2 nearest others.
std::vector<double> KrumScores(std::span<const Vector> updates, int f);
// The update with the lowest score; ties go to the lowest index.
Vector KrumAggregate(std::span<const Vector> updates, int f);
std::size_t KrumSelect(std::span<const Vector> updates, int f);

// Coordinate-wise median; even counts average the two middle values.
Vector MedianAggregate(std::span<const Vector> updates);

// Coordinate-wise: drop the k smallest and k largest, average the rest.
Vector TrimmedMeanAggregate(std::span<const Vector> updates, int k);

using LossFn = std::function<double(const Vector&)>;

// Two-stage Mozi filter from the receiver's point of view. Stage one keeps
// the ceil(rho * m) received updates closest to `own`; stage two keeps those
// whose loss does not exceed loss(own), falling back to the single best
// candidate. Returns the mean of `own` and the survivors; `kept` (optional)
// receives the surviving indices into `received`.
Vector MoziAggregate(const Vector& own, std::span<const Vector> received,
                     const LossFn& loss, double rho,
                     std::vector<std::size_t>* kept = nullptr);

double SquaredDistance(std::span<const double> a, std::span<const double> b);

}  // namespace securedl

#endif  // SECUREDL_AGGREGATION_H_
