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

#include "securedl/sim_config.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "securedl/errors.h"

namespace securedl {
namespace {

using nlohmann::json;

void RequireKnownKeys(const json& j, const std::string& where,
                      std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(),
                     [&key](const char* k) { return key == k; })) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void Get(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

void SimConfig::Resolve() {
  if (byzantine_ids.empty()) {
    for (int c = clients - byzantine; c < clients; ++c) {
      if (c >= 0) byzantine_ids.push_back(c);
    }
  } else {
    byzantine = static_cast<int>(byzantine_ids.size());
  }
  attack.byzantine = byzantine_ids;
  rule.trim = bridge_trim >= 0 ? bridge_trim : byzantine;
  rule.krum_f = krum_f >= 0 ? krum_f : byzantine;
  linalg.clip_bound = hyper.clip_bound;
}

void SimConfig::Validate() const {
  if (clients < 2) throw ConfigError("clients must be >= 2");
  if (byzantine < 0 || byzantine > clients) {
    throw ConfigError("byzantine count must lie in [0, clients]");
  }
  if (static_cast<int>(byzantine_ids.size()) != byzantine) {
    throw ConfigError("byzantine ids do not match the byzantine count");
  }
  attack.Validate(clients);
  if (dataset.name != "mnist" && dataset.name != "synth") {
    throw ConfigError("dataset must be 'mnist' or 'synth'");
  }
  if (dataset.train_samples < static_cast<std::size_t>(clients)) {
    throw ConfigError("fewer training samples than clients");
  }
  if (dataset.test_samples < 1) throw ConfigError("test_samples must be >= 1");
  if (dataset.name == "synth" &&
      (dataset.synth_dim < 1 || dataset.synth_classes < 2)) {
    throw ConfigError("synth dataset needs dim >= 1 and >= 2 classes");
  }
  for (std::size_t h : hidden) {
    if (h == 0) throw ConfigError("hidden layer width must be >= 1");
  }
  hyper.Validate();
  codec.Validate();
  if (!(linalg.norm_floor > 0.0) || linalg.newton_iterations < 1) {
    throw ConfigError("norm floor and Newton iterations must be positive");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");

  const int inputs = clients;
  rule.Validate(inputs);

  if (!adjacency.empty()) {
    if (static_cast<int>(adjacency.size()) != clients) {
      throw ConfigError("adjacency needs one neighbour list per client");
    }
    bool complete = true;
    for (int c = 0; c < clients; ++c) {
      std::set<int> seen;
      for (int nb : adjacency[static_cast<std::size_t>(c)]) {
        if (nb < 0 || nb >= clients || nb == c || !seen.insert(nb).second) {
          throw ConfigError("adjacency of client " + std::to_string(c) +
                            " has an invalid or repeated neighbour");
        }
      }
      if (static_cast<int>(seen.size()) != clients - 1) complete = false;
    }
    if (!complete && rule.kind == RuleKind::kSecureDl) {
      throw ConfigError("securedl runs on the complete graph only");
    }
    if (!complete && rule.kind != RuleKind::kMean &&
        rule.kind != RuleKind::kMozi) {
      for (int c = 0; c < clients; ++c) {
        rule.Validate(static_cast<int>(
                          adjacency[static_cast<std::size_t>(c)].size()) +
                      1);
      }
    }
  }
}

std::vector<int> SimConfig::Neighbours(int client) const {
  if (!adjacency.empty()) return adjacency[static_cast<std::size_t>(client)];
  std::vector<int> out;
  for (int c = 0; c < clients; ++c) {
    if (c != client) out.push_back(c);
  }
  return out;
}

SimConfig ConfigFromJson(const json& j) {
  SimConfig c;
  RequireKnownKeys(j, "config",
                   {"clients", "byzantine", "byzantine_ids", "attack", "rule",
                    "dataset", "model", "training", "fixed_point", "secure",
                    "seed", "output", "workers", "adjacency"});
  Get(j, "clients", c.clients, "config");
  Get(j, "byzantine", c.byzantine, "config");
  Get(j, "byzantine_ids", c.byzantine_ids, "config");
  Get(j, "seed", c.seed, "config");
  Get(j, "workers", c.workers, "config");
  Get(j, "adjacency", c.adjacency, "config");

  if (j.contains("attack")) {
    const json& a = j["attack"];
    RequireKnownKeys(a, "attack",
                     {"kind", "gaussian_mean", "gaussian_variance",
                      "scale_factor", "combination"});
    std::string kind = AttackName(c.attack.kind);
    Get(a, "kind", kind, "attack");
    c.attack.kind = ParseAttackKind(kind);
    Get(a, "gaussian_mean", c.attack.gaussian_mean, "attack");
    Get(a, "gaussian_variance", c.attack.gaussian_variance, "attack");
    Get(a, "scale_factor", c.attack.scale_factor, "attack");
    if (a.contains("combination")) {
      std::vector<std::string> names;
      Get(a, "combination", names, "attack");
      c.attack.combination.clear();
      for (const std::string& n : names) {
        c.attack.combination.push_back(ParseAttackKind(n));
      }
    }
  }
  if (j.contains("rule")) {
    const json& r = j["rule"];
    RequireKnownKeys(r, "rule",
                     {"kind", "tau", "divide_by_accepted", "trim", "krum_f",
                      "mozi_rho", "mozi_batch"});
    std::string kind = RuleName(c.rule.kind);
    Get(r, "kind", kind, "rule");
    c.rule.kind = ParseRuleKind(kind);
    Get(r, "tau", c.rule.tau, "rule");
    Get(r, "divide_by_accepted", c.rule.divide_by_accepted, "rule");
    Get(r, "trim", c.bridge_trim, "rule");
    Get(r, "krum_f", c.krum_f, "rule");
    Get(r, "mozi_rho", c.rule.mozi_rho, "rule");
    Get(r, "mozi_batch", c.rule.mozi_batch, "rule");
  }
  if (j.contains("dataset")) {
    const json& d = j["dataset"];
    RequireKnownKeys(d, "dataset",
                     {"name", "dir", "train_samples", "test_samples",
                      "synth_dim", "synth_classes", "synth_separation",
                      "identical_shards"});
    Get(d, "name", c.dataset.name, "dataset");
    Get(d, "dir", c.dataset.dir, "dataset");
    Get(d, "train_samples", c.dataset.train_samples, "dataset");
    Get(d, "test_samples", c.dataset.test_samples, "dataset");
    Get(d, "synth_dim", c.dataset.synth_dim, "dataset");
    Get(d, "synth_classes", c.dataset.synth_classes, "dataset");
    Get(d, "synth_separation", c.dataset.synth_separation, "dataset");
    Get(d, "identical_shards", c.dataset.identical_shards, "dataset");
  }
  if (j.contains("model")) {
    RequireKnownKeys(j["model"], "model", {"hidden"});
    Get(j["model"], "hidden", c.hidden, "model");
  }
  if (j.contains("training")) {
    const json& t = j["training"];
    RequireKnownKeys(t, "training",
                     {"learning_rate", "batch_size", "local_epochs",
                      "clip_bound", "rounds"});
    Get(t, "learning_rate", c.hyper.learning_rate, "training");
    Get(t, "batch_size", c.hyper.batch_size, "training");
    Get(t, "local_epochs", c.hyper.local_epochs, "training");
    Get(t, "clip_bound", c.hyper.clip_bound, "training");
    Get(t, "rounds", c.hyper.rounds, "training");
  }
  if (j.contains("fixed_point")) {
    RequireKnownKeys(j["fixed_point"], "fixed_point",
                     {"frac_bits", "value_bits"});
    Get(j["fixed_point"], "frac_bits", c.codec.frac_bits, "fixed_point");
    Get(j["fixed_point"], "value_bits", c.codec.value_bits, "fixed_point");
  }
  if (j.contains("secure")) {
    RequireKnownKeys(j["secure"], "secure", {"norm_floor", "newton_iterations"});
    Get(j["secure"], "norm_floor", c.linalg.norm_floor, "secure");
    Get(j["secure"], "newton_iterations", c.linalg.newton_iterations, "secure");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    RequireKnownKeys(o, "output",
                     {"csv", "json", "timing", "transcript_dump",
                      "transcript_capture", "tape_dump_dir"});
    Get(o, "csv", c.output.csv, "output");
    Get(o, "json", c.output.json, "output");
    Get(o, "timing", c.output.timing, "output");
    Get(o, "transcript_dump", c.output.transcript_dump, "output");
    Get(o, "transcript_capture", c.output.transcript_capture, "output");
    Get(o, "tape_dump_dir", c.output.tape_dump_dir, "output");
  }
  return c;
}

SimConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return ConfigFromJson(j);
}

json ConfigToJson(const SimConfig& c) {
  json combination = json::array();
  for (AttackKind k : c.attack.combination) combination.push_back(AttackName(k));
  return json{
      {"clients", c.clients},
      {"byzantine", c.byzantine},
      {"byzantine_ids", c.byzantine_ids},
      {"attack",
       {{"kind", AttackName(c.attack.kind)},
        {"gaussian_mean", c.attack.gaussian_mean},
        {"gaussian_variance", c.attack.gaussian_variance},
        {"scale_factor", c.attack.scale_factor},
        {"combination", combination}}},
      {"rule",
       {{"kind", RuleName(c.rule.kind)},
        {"tau", c.rule.tau},
        {"divide_by_accepted", c.rule.divide_by_accepted},
        {"trim", c.bridge_trim},
        {"krum_f", c.krum_f},
        {"mozi_rho", c.rule.mozi_rho},
        {"mozi_batch", c.rule.mozi_batch}}},
      {"dataset",
       {{"name", c.dataset.name},
        {"dir", c.dataset.dir},
        {"train_samples", c.dataset.train_samples},
        {"test_samples", c.dataset.test_samples},
        {"synth_dim", c.dataset.synth_dim},
        {"synth_classes", c.dataset.synth_classes},
        {"synth_separation", c.dataset.synth_separation},
        {"identical_shards", c.dataset.identical_shards}}},
      {"model", {{"hidden", c.hidden}}},
      {"training",
       {{"learning_rate", c.hyper.learning_rate},
        {"batch_size", c.hyper.batch_size},
        {"local_epochs", c.hyper.local_epochs},
        {"clip_bound", c.hyper.clip_bound},
        {"rounds", c.hyper.rounds}}},
      {"fixed_point",
       {{"frac_bits", c.codec.frac_bits}, {"value_bits", c.codec.value_bits}}},
      {"secure",
       {{"norm_floor", c.linalg.norm_floor},
        {"newton_iterations", c.linalg.newton_iterations}}},
      {"seed", c.seed},
      {"output",
       {{"csv", c.output.csv},
        {"json", c.output.json},
        {"timing", c.output.timing},
        {"transcript_dump", c.output.transcript_dump},
        {"transcript_capture", c.output.transcript_capture},
        {"tape_dump_dir", c.output.tape_dump_dir}}},
      {"workers", c.workers},
      {"adjacency", c.adjacency},
  };
}

}  // namespace securedl
