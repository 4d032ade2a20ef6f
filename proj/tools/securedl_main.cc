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

// Command line front end: run, sweep, bench, audit-transcript.
//
// Exit status: 0 ok, 1 audit failure, 2 usage or configuration error,
// 3 protocol or runtime error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "securedl/bench.h"
#include "securedl/errors.h"
#include "securedl/sim_config.h"
#include "securedl/simulator.h"
#include "securedl/transcript.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// Flags shared by `run` and `sweep`. Unset flags leave the config file value.
struct RunFlags {
  std::string config_path;
  std::optional<int> clients;
  std::optional<int> byzantine;
  std::optional<std::string> attack;
  std::optional<std::string> rule;
  std::optional<double> tau;
  std::optional<int> rounds;
  std::optional<std::string> dataset;
  std::optional<std::string> data_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out;
  bool timing = false;
  std::optional<std::string> divisor;
  std::string transcript_dump;
  std::size_t transcript_capture = 1 << 20;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    app->add_option("--clients", clients, "number of clients n");
    app->add_option("--byzantine", byzantine, "number of Byzantine clients B");
    app->add_option("--attack", attack, "attack")
        ->check(CLI::IsMember({"none", "sf", "noise", "sa", "lf", "combi"}));
    app->add_option("--rule", rule, "aggregation rule")
        ->check(CLI::IsMember(
            {"mean", "dkrum", "dmedian", "bridge", "mozi", "securedl"}));
    app->add_option("--tau", tau, "SecureDL cosine threshold in [0, 1)");
    app->add_option("--rounds", rounds, "global rounds");
    app->add_option("--dataset", dataset, "dataset")
        ->check(CLI::IsMember({"mnist", "synth"}));
    app->add_option("--data-dir", data_dir, "directory of MNIST IDX files");
    app->add_option("--seed", seed, "run seed");
    app->add_option("--workers", workers, "worker threads");
    app->add_option("--out", out, "output directory");
    app->add_flag("--timing", timing, "record wall-clock phase timings");
    app->add_option("--divisor", divisor,
                    "SecureDL divisor: accepted (accepted count plus one) "
                    "or n")
        ->check(CLI::IsMember({"accepted", "n"}));
    app->add_option("--transcript-dump", transcript_dump,
                    "write opened values for audit-transcript");
  }

  securedl::SimConfig Build() const {
    securedl::SimConfig c;
    if (!config_path.empty()) c = securedl::LoadConfigFile(config_path);
    if (clients) c.clients = *clients;
    if (byzantine) {
      c.byzantine = *byzantine;
      c.byzantine_ids.clear();
    }
    if (attack) c.attack.kind = securedl::ParseAttackKind(*attack);
    if (rule) c.rule.kind = securedl::ParseRuleKind(*rule);
    if (tau) c.rule.tau = *tau;
    if (rounds) c.hyper.rounds = *rounds;
    if (dataset) c.dataset.name = *dataset;
    if (data_dir) c.dataset.dir = *data_dir;
    if (seed) c.seed = *seed;
    if (workers) c.workers = *workers;
    if (timing) c.output.timing = true;
    if (divisor) c.rule.divide_by_accepted = *divisor == "accepted";
    if (!transcript_dump.empty()) {
      c.output.transcript_dump = transcript_dump;
      c.output.transcript_capture = transcript_capture;
    }
    if (!out.empty()) {
      std::filesystem::create_directories(out);
      c.output.csv = (std::filesystem::path(out) / "metrics.csv").string();
      c.output.json = (std::filesystem::path(out) / "summary.json").string();
    }
    return c;
  }
};

int RunCommand(const RunFlags& flags) {
  securedl::SimConfig config = flags.Build();
  config.Resolve();
  config.Validate();
  std::cerr << "round mean_acc min_acc max_acc loss rejected\n";
  const securedl::SimResult result =
      securedl::Run(config, [](const securedl::RoundMetrics& m) {
        std::cerr << m.round << ' ' << m.mean_acc << ' ' << m.min_acc << ' '
                  << m.max_acc << ' ' << m.loss << ' ' << m.rejected_count
                  << '\n';
      });
  securedl::WriteOutputs(config, result);
  if (config.output.csv.empty()) {
    securedl::WriteCsv(result.rounds, config.output.timing, std::cout);
  }
  return kExitOk;
}

int SweepCommand(const RunFlags& flags, const std::vector<std::string>& rules,
                 const std::vector<double>& fractions) {
  securedl::SimConfig base = flags.Build();
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!flags.out.empty()) {
    file.open((std::filesystem::path(flags.out) / "sweep.csv").string());
    out = &file;
  }
  *out << "rule,byzantine,fraction,final_mean_acc\n";
  for (const std::string& rule : rules) {
    for (double fraction : fractions) {
      securedl::SimConfig c = base;
      c.output = {};
      c.rule.kind = securedl::ParseRuleKind(rule);
      c.byzantine = static_cast<int>(std::lround(fraction * c.clients));
      c.byzantine_ids.clear();
      std::string acc = "NA";
      try {
        c.Resolve();
        c.Validate();
      } catch (const securedl::ConfigError& e) {
        std::cerr << rule << " at B=" << c.byzantine << ": " << e.what()
                  << '\n';
        *out << rule << ',' << c.byzantine << ',' << fraction << ",NA\n";
        continue;
      }
      const securedl::SimResult r = securedl::Run(c);
      acc = std::to_string(r.rounds.back().mean_acc);
      *out << rule << ',' << c.byzantine << ',' << fraction << ',' << acc
           << '\n';
      out->flush();
    }
  }
  return kExitOk;
}

int BenchCommand(const std::vector<int>& parties,
                 const securedl::BenchOptions& options,
                 const std::string& out_path) {
  const std::vector<securedl::BenchRow> rows =
      securedl::RunBench(parties, options);
  securedl::WriteBenchTable(rows, std::cout);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw securedl::ConfigError("cannot write '" + out_path + "'");
    securedl::WriteBenchTable(rows, out);
  }
  return kExitOk;
}

int AuditCommand(const std::string& path, double alpha) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw securedl::ConfigError("cannot open '" + path + "'");
  const std::vector<securedl::CapturedOpening> words =
      securedl::Transcript::ReadDump(in);
  bool pass = true;
  std::cout << "kind,samples,chi2,df,p_value,verdict\n";
  auto report = [&](const std::string& name,
                    const std::vector<securedl::CapturedOpening>& subset) {
    if (subset.empty()) return;
    const securedl::ChiSquareResult r = securedl::AuditWords(subset);
    const bool ok = r.Passes(alpha);
    pass = pass && ok;
    std::cout << name << ',' << r.samples << ',' << r.statistic << ','
              << r.degrees_of_freedom << ',' << r.p_value << ','
              << (ok ? "uniform" : "NOT-uniform") << '\n';
  };
  for (std::size_t k = 0; k < securedl::kOpenKindCount; ++k) {
    const auto kind = static_cast<securedl::OpenKind>(k);
    std::vector<securedl::CapturedOpening> subset;
    for (const auto& w : words) {
      if (w.kind == kind) subset.push_back(w);
    }
    report(securedl::OpenKindName(kind), subset);
  }
  report("all", words);
  return pass ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving Byzantine-robust decentralized learning"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "simulate one training run");
  run_flags.Register(run);

  RunFlags sweep_flags;
  std::vector<std::string> sweep_rules = {"mean", "dkrum", "dmedian", "bridge",
                                          "mozi", "securedl"};
  std::vector<double> sweep_fractions = {0.0, 0.1, 0.2, 0.3, 0.4,
                                         0.5, 0.6, 0.7, 0.8};
  CLI::App* sweep =
      app.add_subcommand("sweep", "final accuracy over Byzantine fractions");
  sweep_flags.Register(sweep);
  sweep->add_option("--rules", sweep_rules, "rules to sweep")
      ->delimiter(',')
      ->check(CLI::IsMember(
          {"mean", "dkrum", "dmedian", "bridge", "mozi", "securedl"}));
  sweep->add_option("--fractions", sweep_fractions, "Byzantine fractions")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));

  std::vector<int> bench_parties = {3, 5, 8, 10};
  securedl::BenchOptions bench_options;
  std::string bench_out;
  CLI::App* bench =
      app.add_subcommand("bench", "per-operation timing over party counts");
  bench->add_option("--parties", bench_parties, "party counts")->delimiter(',');
  bench->add_option("--dim", bench_options.dim, "vector dimension");
  bench->add_option("--reps", bench_options.repetitions, "repetitions");
  bench->add_option("--seed", bench_options.seed, "seed");
  bench->add_option("--out", bench_out, "CSV output file");

  std::string audit_path;
  double audit_alpha = 0.01;
  CLI::App* audit = app.add_subcommand(
      "audit-transcript", "chi-square uniformity of a transcript dump");
  audit->add_option("dump", audit_path, "transcript dump file")->required();
  audit->add_option("--alpha", audit_alpha, "significance level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return RunCommand(run_flags);
    if (*sweep) return SweepCommand(sweep_flags, sweep_rules, sweep_fractions);
    if (*bench) return BenchCommand(bench_parties, bench_options, bench_out);
    if (*audit) return AuditCommand(audit_path, audit_alpha);
  } catch (const securedl::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const securedl::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
