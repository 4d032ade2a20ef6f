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

#ifndef SECUREDL_SIM_CONFIG_H_
#define SECUREDL_SIM_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "securedl/aggregation.h"
#include "securedl/attacks.h"
#include "securedl/learning.h"
#include "securedl/ring.h"
#include "securedl/secure_linalg.h"

namespace securedl {

struct DatasetConfig {
  // "mnist" or "synth".
  std::string name = "synth";
  // Directory holding the four standard MNIST IDX files.
  std::string dir = "data/mnist";
  std::size_t train_samples = 10000;
  std::size_t test_samples = 2000;
  std::size_t synth_dim = 20;
  int synth_classes = 10;
  double synth_separation = 1.0;
  // Every client receives the whole training set instead of a shard.
  bool identical_shards = false;
};

struct OutputConfig {
  std::string csv;
  std::string json;
  // Off: timing columns are written as 0 so output is reproducible.
  bool timing = false;
  std::string transcript_dump;
  std::size_t transcript_capture = 0;
  // Writes the dealer tapes of the first SecureDL instance here.
  std::string tape_dump_dir;
};

struct SimConfig {
  int clients = 10;
  int byzantine = 0;
  // Explicit Byzantine ids; when empty the last `byzantine` clients are used.
  std::vector<int> byzantine_ids;
  AttackSpec attack;
  AggregationRule rule;
  // Defaults (-1) resolve to the Byzantine count.
  int bridge_trim = -1;
  int krum_f = -1;
  DatasetConfig dataset;
  std::vector<std::size_t> hidden = {32};
  Hyperparams hyper;
  std::uint64_t seed = 1;
  FixedPointCodec codec;
  LinalgParams linalg;
  OutputConfig output;
  int workers = 1;
  // Neighbour lists for the plaintext rules; empty means complete graph.
  std::vector<std::vector<int>> adjacency;

  // Fills in derived values (Byzantine ids, trim, f, clip bound).
  void Resolve();
  // Throws ConfigError on any out-of-range parameter.
  void Validate() const;
  std::vector<int> Neighbours(int client) const;
};

SimConfig ConfigFromJson(const nlohmann::json& j);
SimConfig LoadConfigFile(const std::string& path);
nlohmann::json ConfigToJson(const SimConfig& config);

}  // namespace securedl

#endif  // SECUREDL_SIM_CONFIG_H_
