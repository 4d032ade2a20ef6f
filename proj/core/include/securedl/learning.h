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

#ifndef SECUREDL_LEARNING_H_
#define SECUREDL_LEARNING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "securedl/dataset.h"
#include "securedl/rng.h"

namespace securedl {

// Fully connected network: sigmoid hidden layers, softmax output. Parameters
// are one flat vector, layer by layer, each layer as a row-major
// (out x in) weight matrix followed by `out` biases.
struct MlpArchitecture {
  std::vector<std::size_t> layer_sizes;

  std::size_t inputs() const { return layer_sizes.front(); }
  std::size_t classes() const { return layer_sizes.back(); }
  std::size_t ParamCount() const;
  void Validate() const;
};

struct Hyperparams {
  double learning_rate = 0.01;
  // Fixed: aggregated parameters replace the local model directly.
  double global_learning_rate = 1.0;
  std::size_t batch_size = 128;
  int local_epochs = 1;
  double clip_bound = 1.0;
  int rounds = 150;

  void Validate() const;
};

// Xavier-uniform weights, zero biases.
std::vector<double> InitParams(const MlpArchitecture& arch, Rng& rng);

// Class probabilities, rows x classes.
std::vector<double> Forward(const MlpArchitecture& arch,
                            std::span<const double> params,
                            std::span<const float> features, std::size_t rows);

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

// Mean cross-entropy over the batch and its gradient.
LossGrad LossAndGrad(const MlpArchitecture& arch,
                     std::span<const double> params,
                     std::span<const float> features,
                     std::span<const int> labels);
double Loss(const MlpArchitecture& arch, std::span<const double> params,
            std::span<const float> features, std::span<const int> labels);

// Clamps each coordinate to [-bound, bound].
void ClipInfNorm(std::span<double> v, double bound);

// Mini-batch SGD from `params` over `shard`, then clipping. Returns the new
// parameter vector.
std::vector<double> LocalUpdate(const MlpArchitecture& arch,
                                std::span<const double> params,
                                const Dataset& shard,
                                const Hyperparams& hyper, Rng& rng);

struct Evaluation {
  double accuracy = 0.0;
  double loss = 0.0;
};

Evaluation Evaluate(const MlpArchitecture& arch,
                    std::span<const double> params, const Dataset& data);

}  // namespace securedl

#endif  // SECUREDL_LEARNING_H_
