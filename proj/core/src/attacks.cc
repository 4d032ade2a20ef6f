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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "securedl/errors.h"

namespace securedl {

AttackKind ParseAttackKind(const std::string& name) {
  if (name == "none") return AttackKind::kNone;
  if (name == "sf") return AttackKind::kSignFlip;
  if (name == "noise") return AttackKind::kGaussian;
  if (name == "sa") return AttackKind::kScaling;
  if (name == "lf") return AttackKind::kLabelFlip;
  if (name == "combi") return AttackKind::kCombination;
  throw ConfigError("unknown attack '" + name + "'");
}

std::string AttackName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone:
      return "none";
    case AttackKind::kSignFlip:
      return "sf";
    case AttackKind::kGaussian:
      return "noise";
    case AttackKind::kScaling:
      return "sa";
    case AttackKind::kLabelFlip:
      return "lf";
    case AttackKind::kCombination:
      return "combi";
  }
  return "unknown";
}

bool AttackSpec::IsByzantine(int client) const {
  return std::find(byzantine.begin(), byzantine.end(), client) !=
         byzantine.end();
}

bool AttackSpec::PoisonsData() const {
  if (kind == AttackKind::kLabelFlip) return true;
  return kind == AttackKind::kCombination &&
         std::find(combination.begin(), combination.end(),
                   AttackKind::kLabelFlip) != combination.end();
}

void AttackSpec::Validate(int clients) const {
  std::set<int> seen;
  for (int b : byzantine) {
    if (b < 0 || b >= clients) {
      throw ConfigError("byzantine client id " + std::to_string(b) +
                        " outside [0, " + std::to_string(clients) + ")");
    }
    if (!seen.insert(b).second) {
      throw ConfigError("byzantine client id " + std::to_string(b) +
                        " listed twice");
    }
  }
  if (!std::isfinite(gaussian_mean) || !std::isfinite(gaussian_variance) ||
      gaussian_variance < 0.0 || !std::isfinite(scale_factor)) {
    throw ConfigError("attack parameters must be finite (variance >= 0)");
  }
  for (AttackKind k : combination) {
    if (k == AttackKind::kCombination || k == AttackKind::kNone) {
      throw ConfigError("combination sub-attacks must be sf, sa, noise or lf");
    }
  }
}

std::vector<double> SignFlip(std::span<const double> u) {
  std::vector<double> out(u.size());
  std::transform(u.begin(), u.end(), out.begin(), [](double v) { return -v; });
  return out;
}

std::vector<double> GaussianAttack(std::size_t dim, Rng& rng, double mean,
                                   double variance) {
  std::normal_distribution<double> dist(mean, std::sqrt(variance));
  std::vector<double> out(dim);
  for (double& v : out) v = dist(rng);
  return out;
}

std::vector<double> ScalingAttack(std::span<const double> u, double factor) {
  std::vector<double> out(u.size());
  std::transform(u.begin(), u.end(), out.begin(),
                 [factor](double v) { return factor * v; });
  return out;
}

int LabelFlip(int label, int num_classes) {
  if (label < 0 || label >= num_classes) {
    throw ConfigError("label flip: label outside [0, L)");
  }
  return num_classes - label - 1;
}

Dataset LabelFlipDataset(const Dataset& data) {
  Dataset out = data;
  for (int& l : out.labels) l = LabelFlip(l, out.num_classes);
  return out;
}

std::vector<double> PoisonUpdate(const AttackSpec& spec,
                                 std::span<const double> trained, Rng& rng) {
  switch (spec.kind) {
    case AttackKind::kNone:
    case AttackKind::kLabelFlip:
      return {trained.begin(), trained.end()};
    case AttackKind::kSignFlip:
      return SignFlip(trained);
    case AttackKind::kScaling:
      return ScalingAttack(trained, spec.scale_factor);
    case AttackKind::kGaussian:
      return GaussianAttack(trained.size(), rng, spec.gaussian_mean,
                            spec.gaussian_variance);
    case AttackKind::kCombination:
      break;
  }
  std::vector<double> u(trained.begin(), trained.end());
  for (AttackKind k : spec.combination) {
    switch (k) {
      case AttackKind::kSignFlip:
        u = SignFlip(u);
        break;
      case AttackKind::kScaling:
        u = ScalingAttack(u, spec.scale_factor);
        break;
      case AttackKind::kGaussian: {
        const std::vector<double> noise = GaussianAttack(
            u.size(), rng, spec.gaussian_mean, spec.gaussian_variance);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += noise[i];
        break;
      }
      default:
        break;
    }
  }
  return u;
}

}  // namespace securedl
