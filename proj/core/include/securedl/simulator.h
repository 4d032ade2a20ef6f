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

#ifndef SECUREDL_SIMULATOR_H_
#define SECUREDL_SIMULATOR_H_

#include <cstddef>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "securedl/aggregation.h"
#include "securedl/dataset.h"
#include "securedl/dealer.h"
#include "securedl/learning.h"
#include "securedl/report.h"
#include "securedl/sim_config.h"
#include "securedl/transcript.h"

namespace securedl {

struct SimData {
  Dataset train;
  Dataset test;
};

// Loads or generates the configured train/test split.
SimData LoadSimData(const SimConfig& config);

MlpArchitecture ArchitectureFor(const SimConfig& config,
                                const Dataset& train);

struct SimResult {
  std::vector<RoundMetrics> rounds;
  std::vector<Vector> final_models;
  std::vector<int> honest;
  // Preprocessing provisioned per round, from the cost formulas.
  TapeBudget budget_per_round;
  std::size_t model_dim = 0;
  Transcript transcript;
};

using RoundCallback = std::function<void(const RoundMetrics&)>;

// Runs the decentralized training loop. `config` must already be resolved.
SimResult Run(const SimConfig& config, const SimData& data,
              const RoundCallback& on_round = {});
SimResult Run(const SimConfig& config, const RoundCallback& on_round = {});

// Writes the CSV/JSON/transcript outputs requested by `config.output`.
void WriteOutputs(const SimConfig& config, const SimResult& result);
nlohmann::json SummaryJson(const SimConfig& config, const SimResult& result);

// Runs fn(0..count-1) on up to `workers` threads. Each index is handled by
// exactly one call; the first exception is rethrown.
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace securedl

#endif  // SECUREDL_SIMULATOR_H_
