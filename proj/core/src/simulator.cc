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

#include "securedl/simulator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "securedl/attacks.h"
#include "securedl/errors.h"
#include "securedl/rng.h"
#include "securedl/securedl_rule.h"
#include "securedl/sharing.h"

namespace securedl {
namespace {

constexpr const char* kMnistTrainImages = "train-images-idx3-ubyte";
constexpr const char* kMnistTrainLabels = "train-labels-idx1-ubyte";
constexpr const char* kMnistTestImages = "t10k-images-idx3-ubyte";
constexpr const char* kMnistTestLabels = "t10k-labels-idx1-ubyte";

// Everything a receiver produces in one round.
struct ReceiverOutcome {
  Vector model;
  std::vector<bool> accept;
  int rejected = 0;
  SecureDlStats stats;
  Transcript transcript;
};

Sharing ShareVectorFixed(const Vector& v, int parties,
                         const FixedPointCodec& codec, Rng& rng) {
  std::vector<RingElement> enc(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) enc[i] = codec.Encode(v[i]);
  return Sharing::FromSecret(enc, parties, rng);
}

void CheckSecureRange(const SimConfig& config, std::size_t dim) {
  const double g = config.hyper.clip_bound;
  const double d = static_cast<double>(dim);
  const double limit = config.codec.MaxMagnitude();
  if (d * g * g >= limit) {
    throw ConfigError("securedl: d * G^2 = " + std::to_string(d * g * g) +
                      " exceeds the fixed-point range " +
                      std::to_string(limit));
  }
  if (static_cast<double>(config.clients) * std::sqrt(d) * g >= limit) {
    throw ConfigError("securedl: n * sqrt(d) * G exceeds the fixed-point "
                      "range");
  }
}

Dataset MoziBatch(const Dataset& shard, std::size_t batch, Rng& rng) {
  std::vector<std::size_t> idx(shard.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(batch, idx.size()));
  return shard.Subset(idx);
}

}  // namespace

void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SimData LoadSimData(const SimConfig& config) {
  const DatasetConfig& dc = config.dataset;
  SimData data;
  if (dc.name == "mnist") {
    namespace fs = std::filesystem;
    const fs::path dir(dc.dir);
    const Dataset train = LoadIdx((dir / kMnistTrainImages).string(),
                                  (dir / kMnistTrainLabels).string());
    const Dataset test = LoadIdx((dir / kMnistTestImages).string(),
                                 (dir / kMnistTestLabels).string());
    data.train = RandomSubset(train, dc.train_samples, config.seed);
    data.test = RandomSubset(test, dc.test_samples, config.seed + 1);
    return data;
  }
  const std::size_t total = dc.train_samples + dc.test_samples;
  const Dataset all = SynthBlobs(total, dc.synth_dim, dc.synth_classes,
                                 config.seed, dc.synth_separation);
  std::vector<std::size_t> train_idx(dc.train_samples);
  std::vector<std::size_t> test_idx(dc.test_samples);
  for (std::size_t i = 0; i < dc.train_samples; ++i) train_idx[i] = i;
  for (std::size_t i = 0; i < dc.test_samples; ++i) {
    test_idx[i] = dc.train_samples + i;
  }
  data.train = all.Subset(train_idx);
  data.test = all.Subset(test_idx);
  return data;
}

MlpArchitecture ArchitectureFor(const SimConfig& config,
                                const Dataset& train) {
  MlpArchitecture arch;
  arch.layer_sizes.push_back(train.feature_dim);
  for (std::size_t h : config.hidden) arch.layer_sizes.push_back(h);
  arch.layer_sizes.push_back(static_cast<std::size_t>(train.num_classes));
  arch.Validate();
  return arch;
}

SimResult Run(const SimConfig& config, const RoundCallback& on_round) {
  return Run(config, LoadSimData(config), on_round);
}

SimResult Run(const SimConfig& config, const SimData& data,
              const RoundCallback& on_round) {
  config.Validate();
  const int n = config.clients;
  const std::uint64_t seed = config.seed;
  const MlpArchitecture arch = ArchitectureFor(config, data.train);
  const std::size_t dim = arch.ParamCount();
  const bool secure = config.rule.kind == RuleKind::kSecureDl;
  if (secure) CheckSecureRange(config, dim);

  SimResult result;
  result.transcript = Transcript(config.output.transcript_capture);
  result.model_dim = dim;
  for (int c = 0; c < n; ++c) {
    if (!config.attack.IsByzantine(c)) result.honest.push_back(c);
  }
  std::vector<int> evaluated = result.honest;
  if (evaluated.empty()) {
    for (int c = 0; c < n; ++c) evaluated.push_back(c);
  }

  std::vector<Dataset> shards;
  if (config.dataset.identical_shards) {
    shards.assign(static_cast<std::size_t>(n), data.train);
  } else {
    shards = IidPartition(data.train, n, seed);
  }
  std::vector<Dataset> flipped(static_cast<std::size_t>(n));
  if (config.attack.PoisonsData()) {
    for (int c : config.byzantine_ids) {
      flipped[static_cast<std::size_t>(c)] =
          LabelFlipDataset(shards[static_cast<std::size_t>(c)]);
    }
  }

  Rng init_rng = DeriveRng(seed, {Tag(Stream::kInit)});
  const Vector init = InitParams(arch, init_rng);
  std::vector<Vector> models(static_cast<std::size_t>(n), init);

  SecureDlParams sparams;
  sparams.tau = config.rule.tau;
  sparams.divide_by_accepted = config.rule.divide_by_accepted;
  sparams.linalg = config.linalg;
  sparams.codec = config.codec;
  if (secure) {
    sparams.Validate();
    result.budget_per_round =
        SecureDlReceiverCost(dim, n - 1, sparams.linalg) *
        static_cast<std::uint64_t>(n);
  }

  for (int round = 0; round < config.hyper.rounds; ++round) {
    const auto r = static_cast<std::uint64_t>(round);
    // Local training; `trained` is every client's honest result, `sent` what
    // it shares with the others.
    std::vector<Vector> trained(static_cast<std::size_t>(n));
    std::vector<Vector> sent(static_cast<std::size_t>(n));
    ParallelFor(static_cast<std::size_t>(n), config.workers,
                [&](std::size_t i) {
                  const int c = static_cast<int>(i);
                  const bool byz = config.attack.IsByzantine(c);
                  const Dataset& own_data =
                      byz && config.attack.PoisonsData() ? flipped[i]
                                                         : shards[i];
                  Rng rng = DeriveRng(seed, {Tag(Stream::kTraining), r, i});
                  Vector update =
                      LocalUpdate(arch, models[i], own_data, config.hyper, rng);
                  if (!byz) {
                    trained[i] = update;
                    sent[i] = std::move(update);
                    return;
                  }
                  Rng attack_rng = DeriveRng(seed, {Tag(Stream::kAttack), r, i});
                  Vector bad =
                      PoisonUpdate(config.attack, update, attack_rng);
                  ClipInfNorm(bad, config.hyper.clip_bound);
                  sent[i] = std::move(bad);
                  if (config.attack.PoisonsData()) {
                    // The reference model of a data-poisoning client is its
                    // clean-data update.
                    Rng clean_rng =
                        DeriveRng(seed, {Tag(Stream::kTraining), r, i, 1});
                    trained[i] = LocalUpdate(arch, models[i], shards[i],
                                             config.hyper, clean_rng);
                  } else {
                    trained[i] = std::move(update);
                  }
                });

    std::vector<Sharing> shared;
    if (secure) {
      shared.resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        Rng rng = DeriveRng(seed, {Tag(Stream::kSharing), r,
                                   static_cast<std::uint64_t>(j)});
        shared[static_cast<std::size_t>(j)] =
            ShareVectorFixed(sent[static_cast<std::size_t>(j)], n,
                             config.codec, rng);
      }
    }

    std::vector<ReceiverOutcome> outcomes(static_cast<std::size_t>(n));
    for (ReceiverOutcome& o : outcomes) {
      o.transcript = Transcript(config.output.transcript_capture);
    }
    ParallelFor(
        static_cast<std::size_t>(n), config.workers, [&](std::size_t i) {
          const int receiver = static_cast<int>(i);
          ReceiverOutcome& out = outcomes[i];
          const Vector& own = trained[i];
          const std::vector<int> senders = config.Neighbours(receiver);
          if (secure) {
            Sharing own_shared = shared[i];
            if (sent[i] != trained[i]) {
              Rng rng = DeriveRng(seed, {Tag(Stream::kSharing), r, i, 1});
              own_shared = ShareVectorFixed(own, n, config.codec, rng);
            }
            std::vector<Sharing> received;
            received.reserve(senders.size());
            for (int s : senders) {
              received.push_back(shared[static_cast<std::size_t>(s)]);
            }
            TapeProvider tapes = SeededTapeProvider(
                n, DeriveSeed(seed, {Tag(Stream::kDealer), r, i}),
                config.codec);
            if (round == 0 && receiver == 0 &&
                !config.output.tape_dump_dir.empty()) {
              tapes = [base = tapes, dir = config.output.tape_dump_dir](
                          std::size_t instance, const TapeBudget& demand) {
                std::vector<DealerTape> t = base(instance, demand);
                if (instance == 0) {
                  std::filesystem::create_directories(dir);
                  for (const DealerTape& tape : t) {
                    std::ofstream f(
                        (std::filesystem::path(dir) /
                         ("tape_party" + std::to_string(tape.party_id()) +
                          ".bin"))
                            .string(),
                        std::ios::binary);
                    tape.Write(f);
                  }
                }
                return t;
              };
            }
            AggregationDecision d =
                SecureDlAggregate(receiver, own_shared, received, senders,
                                  sparams, tapes, &out.transcript, &out.stats);
            out.model = std::move(d.aggregate);
            out.accept = d.accepted;
            out.rejected = static_cast<int>(
                std::count(d.accepted.begin(), d.accepted.end(), false));
            return;
          }
          std::vector<Vector> all;
          all.reserve(senders.size() + 1);
          all.push_back(own);
          for (int s : senders) all.push_back(sent[static_cast<std::size_t>(s)]);
          switch (config.rule.kind) {
            case RuleKind::kMean:
              out.model = MeanAggregate(all);
              break;
            case RuleKind::kDKrum:
              out.model = KrumAggregate(all, config.rule.krum_f);
              break;
            case RuleKind::kDMedian:
              out.model = MedianAggregate(all);
              break;
            case RuleKind::kBridge:
              out.model = TrimmedMeanAggregate(all, config.rule.trim);
              break;
            case RuleKind::kMozi: {
              Rng rng = DeriveRng(seed, {Tag(Stream::kMozi), r, i});
              const Dataset batch = MoziBatch(
                  shards[i], static_cast<std::size_t>(config.rule.mozi_batch),
                  rng);
              const LossFn loss = [&](const Vector& w) {
                return Loss(arch, w, batch.features, batch.labels);
              };
              std::vector<std::size_t> kept;
              out.model = MoziAggregate(
                  own, std::span<const Vector>(all).subspan(1), loss,
                  config.rule.mozi_rho, &kept);
              out.rejected = static_cast<int>(senders.size() - kept.size());
              break;
            }
            case RuleKind::kSecureDl:
              break;
          }
        });

    RoundMetrics m;
    m.round = round;
    m.client_accuracy.resize(static_cast<std::size_t>(n));
    std::vector<double> losses(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      models[static_cast<std::size_t>(c)] =
          std::move(outcomes[static_cast<std::size_t>(c)].model);
    }
    ParallelFor(static_cast<std::size_t>(n), config.workers,
                [&](std::size_t i) {
                  const Evaluation ev = Evaluate(arch, models[i], data.test);
                  m.client_accuracy[i] = ev.accuracy;
                  losses[i] = ev.loss;
                });
    m.min_acc = 1.0;
    m.max_acc = 0.0;
    for (int c : evaluated) {
      const double a = m.client_accuracy[static_cast<std::size_t>(c)];
      m.mean_acc += a;
      m.min_acc = std::min(m.min_acc, a);
      m.max_acc = std::max(m.max_acc, a);
      m.loss += losses[static_cast<std::size_t>(c)];
    }
    m.mean_acc /= static_cast<double>(evaluated.size());
    m.loss /= static_cast<double>(evaluated.size());
    for (ReceiverOutcome& o : outcomes) {
      m.rejected_count += o.rejected;
      if (secure) m.accept.push_back(o.accept);
      m.times += o.stats.times;
      m.dealer_provisioned += o.stats.provisioned;
      m.dealer_consumed += o.stats.consumed;
      m.transport += o.stats.transport;
      result.transcript.Merge(o.transcript);
    }
    if (on_round) on_round(m);
    result.rounds.push_back(std::move(m));
  }
  result.final_models = std::move(models);
  return result;
}

nlohmann::json SummaryJson(const SimConfig& config, const SimResult& result) {
  nlohmann::json j;
  j["config"] = ConfigToJson(config);
  j["seed"] = config.seed;
  j["git_describe"] = GitDescribe();
  j["model_dim"] = result.model_dim;
  j["honest_clients"] = result.honest;
  const TapeBudget total =
      result.budget_per_round *
      static_cast<std::uint64_t>(config.hyper.rounds);
  j["dealer_budget"] = {{"triples", total.triples},
                        {"trunc_pairs", total.trunc_pairs},
                        {"edabits", total.edabits}};
  if (!result.rounds.empty()) {
    const RoundMetrics& last = result.rounds.back();
    j["final"] = {{"round", last.round},
                  {"mean_acc", last.mean_acc},
                  {"min_acc", last.min_acc},
                  {"max_acc", last.max_acc},
                  {"loss", last.loss},
                  {"client_accuracy", last.client_accuracy}};
  }
  TapeBudget consumed;
  std::uint64_t rejected = 0;
  for (const RoundMetrics& m : result.rounds) {
    consumed += m.dealer_consumed;
    rejected += static_cast<std::uint64_t>(m.rejected_count);
  }
  j["dealer_consumed"] = {{"triples", consumed.triples},
                          {"trunc_pairs", consumed.trunc_pairs},
                          {"edabits", consumed.edabits}};
  j["rejected_total"] = rejected;
  return j;
}

void WriteOutputs(const SimConfig& config, const SimResult& result) {
  const OutputConfig& o = config.output;
  if (!o.csv.empty()) WriteCsvFile(result.rounds, o.timing, o.csv);
  if (!o.json.empty()) {
    std::ofstream out(o.json);
    if (!out) throw ConfigError("cannot write '" + o.json + "'");
    out << SummaryJson(config, result).dump(2) << '\n';
  }
  if (!o.transcript_dump.empty()) {
    std::ofstream out(o.transcript_dump, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + o.transcript_dump + "'");
    result.transcript.WriteDump(out);
  }
}

}  // namespace securedl
