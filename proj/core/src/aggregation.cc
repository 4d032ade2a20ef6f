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

#include "securedl/aggregation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "securedl/errors.h"

namespace securedl {
namespace {

std::size_t CheckUpdates(std::span<const Vector> updates) {
  if (updates.empty()) throw ConfigError("aggregation over zero updates");
  const std::size_t d = updates.front().size();
  for (const Vector& u : updates) {
    if (u.size() != d) throw ConfigError("aggregation: dimension mismatch");
  }
  return d;
}

}  // namespace

RuleKind ParseRuleKind(const std::string& name) {
  if (name == "mean") return RuleKind::kMean;
  if (name == "dkrum") return RuleKind::kDKrum;
  if (name == "dmedian") return RuleKind::kDMedian;
  if (name == "bridge") return RuleKind::kBridge;
  if (name == "mozi") return RuleKind::kMozi;
  if (name == "securedl") return RuleKind::kSecureDl;
  throw ConfigError("unknown aggregation rule '" + name + "'");
}

std::string RuleName(RuleKind kind) {
  switch (kind) {
    case RuleKind::kMean:
      return "mean";
    case RuleKind::kDKrum:
      return "dkrum";
    case RuleKind::kDMedian:
      return "dmedian";
    case RuleKind::kBridge:
      return "bridge";
    case RuleKind::kMozi:
      return "mozi";
    case RuleKind::kSecureDl:
      return "securedl";
  }
  return "unknown";
}

void AggregationRule::Validate(int inputs) const {
  switch (kind) {
    case RuleKind::kSecureDl:
      if (!(tau >= 0.0 && tau < 1.0)) {
        throw ConfigError("securedl: tau must lie in [0, 1)");
      }
      break;
    case RuleKind::kBridge:
      if (trim < 0 || 2 * trim >= inputs) {
        throw ConfigError("bridge: trim k=" + std::to_string(trim) +
                          " needs 0 <= k < n/2 with n=" +
                          std::to_string(inputs));
      }
      break;
    case RuleKind::kDKrum:
      if (krum_f < 0 || inputs - krum_f - 2 < 1) {
        throw ConfigError("dkrum: needs n - f - 2 >= 1 (n=" +
                          std::to_string(inputs) +
                          ", f=" + std::to_string(krum_f) + ")");
      }
      break;
    case RuleKind::kMozi:
      if (!(mozi_rho > 0.0 && mozi_rho <= 1.0) || mozi_batch < 1) {
        throw ConfigError("mozi: needs 0 < rho <= 1 and batch >= 1");
      }
      break;
    case RuleKind::kMean:
    case RuleKind::kDMedian:
      break;
  }
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

Vector MeanAggregate(std::span<const Vector> updates) {
  const std::size_t d = CheckUpdates(updates);
  Vector out(d, 0.0);
  for (const Vector& u : updates) {
    for (std::size_t i = 0; i < d; ++i) out[i] += u[i];
  }
  const double inv = 1.0 / static_cast<double>(updates.size());
  for (double& v : out) v *= inv;
  return out;
}

std::vector<double> KrumScores(std::span<const Vector> updates, int f) {
  CheckUpdates(updates);
  const int n = static_cast<int>(updates.size());
  const int neighbours = n - f - 2;
  if (f < 0 || neighbours < 1) {
    throw ConfigError("krum: needs n - f - 2 >= 1 (n=" + std::to_string(n) +
                      ", f=" + std::to_string(f) + ")");
  }
  std::vector<std::vector<double>> dist(updates.size(),
                                        std::vector<double>(updates.size()));
  for (std::size_t i = 0; i < updates.size(); ++i) {
    for (std::size_t j = i + 1; j < updates.size(); ++j) {
      dist[i][j] = dist[j][i] = SquaredDistance(updates[i], updates[j]);
    }
  }
  std::vector<double> scores(updates.size());
  for (std::size_t i = 0; i < updates.size(); ++i) {
    std::vector<double> others;
    others.reserve(updates.size() - 1);
    for (std::size_t j = 0; j < updates.size(); ++j) {
      if (j != i) others.push_back(dist[i][j]);
    }
    std::partial_sort(others.begin(), others.begin() + neighbours,
                      others.end());
    scores[i] = std::accumulate(others.begin(), others.begin() + neighbours,
                                0.0);
  }
  return scores;
}

std::size_t KrumSelect(std::span<const Vector> updates, int f) {
  const std::vector<double> scores = KrumScores(updates, f);
  // min_element returns the first minimum, i.e. the lowest index on ties.
  return static_cast<std::size_t>(
      std::min_element(scores.begin(), scores.end()) - scores.begin());
}

Vector KrumAggregate(std::span<const Vector> updates, int f) {
  return updates[KrumSelect(updates, f)];
}

Vector MedianAggregate(std::span<const Vector> updates) {
  const std::size_t d = CheckUpdates(updates);
  const std::size_t n = updates.size();
  Vector out(d);
  std::vector<double> column(n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < n; ++k) column[k] = updates[k][i];
    const std::size_t mid = n / 2;
    std::nth_element(column.begin(), column.begin() + static_cast<long>(mid),
                     column.end());
    double m = column[mid];
    if (n % 2 == 0) {
      const double lower = *std::max_element(
          column.begin(), column.begin() + static_cast<long>(mid));
      m = 0.5 * (m + lower);
    }
    out[i] = m;
  }
  return out;
}

Vector TrimmedMeanAggregate(std::span<const Vector> updates, int k) {
  const std::size_t d = CheckUpdates(updates);
  const std::size_t n = updates.size();
  if (k < 0 || 2 * static_cast<std::size_t>(k) >= n) {
    throw ConfigError("trimmed mean: needs 0 <= k < n/2");
  }
  Vector out(d);
  std::vector<double> column(n);
  const auto trim = static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) column[j] = updates[j][i];
    std::sort(column.begin(), column.end());
    double s = 0.0;
    for (std::size_t j = trim; j < n - trim; ++j) s += column[j];
    out[i] = s / static_cast<double>(n - 2 * trim);
  }
  return out;
}

Vector MoziAggregate(const Vector& own, std::span<const Vector> received,
                     const LossFn& loss, double rho,
                     std::vector<std::size_t>* kept) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("mozi: rho in (0, 1]");
  for (const Vector& u : received) {
    if (u.size() != own.size()) throw ConfigError("mozi: dimension mismatch");
  }
  std::vector<std::size_t> survivors;
  if (!received.empty()) {
    const auto m = received.size();
    auto keep = static_cast<std::size_t>(
        std::ceil(rho * static_cast<double>(m) - 1e-12));
    keep = std::clamp<std::size_t>(keep, 1, m);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> dist(m);
    for (std::size_t j = 0; j < m; ++j) dist[j] = SquaredDistance(own, received[j]);
    std::stable_sort(order.begin(), order.end(),
                     [&dist](std::size_t a, std::size_t b) {
                       return dist[a] < dist[b];
                     });
    order.resize(keep);

    const double own_loss = loss(own);
    std::vector<double> losses(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      losses[k] = loss(received[order[k]]);
      if (losses[k] <= own_loss) survivors.push_back(order[k]);
    }
    if (survivors.empty()) {
      const auto best = static_cast<std::size_t>(
          std::min_element(losses.begin(), losses.end()) - losses.begin());
      survivors.push_back(order[best]);
    }
    std::sort(survivors.begin(), survivors.end());
  }
  Vector out = own;
  for (std::size_t j : survivors) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += received[j][i];
  }
  const double inv = 1.0 / static_cast<double>(survivors.size() + 1);
  for (double& v : out) v *= inv;
  if (kept != nullptr) *kept = std::move(survivors);
  return out;
}

}  // namespace securedl
