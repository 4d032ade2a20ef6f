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

#ifndef SECUREDL_ATTACKS_H_
#define SECUREDL_ATTACKS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "securedl/dataset.h"
#include "securedl/rng.h"

namespace securedl {

enum class AttackKind {
  kNone,
  kSignFlip,
  kGaussian,
  kScaling,
  kLabelFlip,
  kCombination
};

// CLI names: none, sf, noise, sa, lf, combi.
AttackKind ParseAttackKind(const std::string& name);
std::string AttackName(AttackKind kind);

struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  double gaussian_mean = 0.1;
  double gaussian_variance = 0.1;
  double scale_factor = 100.0;
  // Sub-attacks of a combination. Label flipping acts on data before
  // training; the others act on the trained update in list order.
  std::vector<AttackKind> combination = {
      AttackKind::kLabelFlip, AttackKind::kSignFlip, AttackKind::kScaling,
      AttackKind::kGaussian};
  std::vector<int> byzantine;

  bool IsByzantine(int client) const;
  // Whether a Byzantine client trains on label-flipped data.
  bool PoisonsData() const;
  void Validate(int clients) const;
};

std::vector<double> SignFlip(std::span<const double> u);
// I.i.d. normal samples with the given mean and variance.
std::vector<double> GaussianAttack(std::size_t dim, Rng& rng, double mean = 0.1,
                                   double variance = 0.1);
std::vector<double> ScalingAttack(std::span<const double> u, double factor);
int LabelFlip(int label, int num_classes);
Dataset LabelFlipDataset(const Dataset& data);

// Update-level part of the attack applied to a Byzantine client's trained
// update. A combination adds Gaussian noise rather than replacing.
std::vector<double> PoisonUpdate(const AttackSpec& spec,
                                 std::span<const double> trained, Rng& rng);

}  // namespace securedl

#endif  // SECUREDL_ATTACKS_H_
