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

#include "securedl/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

#include "securedl/dealer.h"
#include "securedl/errors.h"
#include "securedl/mpc.h"
#include "securedl/rng.h"
#include "securedl/secure_linalg.h"
#include "securedl/sharing.h"

namespace securedl {
namespace {

using Clock = std::chrono::steady_clock;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <typename Fn>
double TimeMs(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

Sharing RandomShared(std::size_t dim, int parties, const FixedPointCodec& codec,
                     Rng& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<RingElement> enc(dim);
  for (RingElement& e : enc) e = codec.Encode(dist(rng));
  return Sharing::FromSecret(enc, parties, rng);
}

}  // namespace

std::vector<BenchRow> RunBench(std::span<const int> party_counts,
                               const BenchOptions& options) {
  if (options.dim == 0 || options.repetitions < 1) {
    throw ConfigError("bench: dim and repetitions must be positive");
  }
  const FixedPointCodec codec;
  const LinalgParams params;
  const TapeBudget per_rep = CosineCost(options.dim, params) + CompareCost() +
                             L2NormalizeCost(options.dim, params);

  struct Series {
    Sharing a, b;
    std::vector<double> cosine, compare, norm, beaver;
    TransportStats transport;
  };
  std::vector<Series> series;
  for (int n : party_counts) {
    if (n < 2) throw ConfigError("bench: party counts must be >= 2");
    Rng rng = DeriveRng(options.seed,
                        {Tag(Stream::kSharing), static_cast<std::uint64_t>(n)});
    Series s;
    s.a = RandomShared(options.dim, n, codec, rng);
    s.b = RandomShared(options.dim, n, codec, rng);
    series.push_back(std::move(s));
  }

  // Party counts are interleaved within each repetition so that transient
  // load on the host hits every count alike. Rep -1 is an untimed warm-up.
  for (int rep = -1; rep < options.repetitions; ++rep) {
    for (std::size_t k = 0; k < series.size(); ++k) {
      const int n = party_counts[k];
      Series& s = series[k];
      std::vector<DealerTape> tapes = GenerateTapes(
          n, per_rep,
          DeriveSeed(options.seed, {static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(rep + 1)}),
          codec);
      MpcSession session(tapes, codec);
      CosineResult cos;
      const double t_cos =
          TimeMs([&] { cos = CosineSimilarity(session, s.a, s.b, params); });
      const TransportStats transport = session.transport_stats();
      const double t_cmp = TimeMs(
          [&] { session.CompareLtPublic(cos.cosine, codec.Encode(0.0)); });
      const double t_norm =
          TimeMs([&] { L2Normalize(session, s.a, s.b, params); });
      if (rep < 0) continue;
      s.cosine.push_back(t_cos);
      s.compare.push_back(t_cmp);
      s.norm.push_back(t_norm);
      s.beaver.push_back(
          std::chrono::duration<double, std::milli>(session.beaver_time())
              .count());
      s.transport = transport;
    }
  }

  std::vector<BenchRow> rows;
  for (std::size_t k = 0; k < series.size(); ++k) {
    BenchRow row;
    row.parties = party_counts[k];
    row.cosine_ms = Median(series[k].cosine);
    row.compare_ms = Median(series[k].compare);
    row.norm_ms = Median(series[k].norm);
    row.beaver_ms = Median(series[k].beaver);
    row.cosine_transport = series[k].transport;
    rows.push_back(row);
  }
  return rows;
}

void WriteBenchTable(std::span<const BenchRow> rows, std::ostream& out) {
  out << "parties,t_cosine_ms,t_compare_ms,t_norm_ms,t_beaver_ms\n";
  char buf[160];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.4f,%.4f,%.4f,%.4f\n", r.parties,
                  r.cosine_ms, r.compare_ms, r.norm_ms, r.beaver_ms);
    out << buf;
  }
}

}  // namespace securedl
