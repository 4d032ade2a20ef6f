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

// Microbenchmarks of the online protocols. Dealer tapes are generated
// outside the timed region.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "securedl/dealer.h"
#include "securedl/mpc.h"
#include "securedl/ring.h"
#include "securedl/rng.h"
#include "securedl/secure_linalg.h"
#include "securedl/sharing.h"

namespace securedl {
namespace {

Sharing RandomShared(std::size_t dim, int parties, double magnitude,
                     std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> dist(-magnitude, magnitude);
  std::vector<RingElement> v(dim);
  for (RingElement& e : v) e = EncodeFixed(dist(rng));
  return Sharing::FromSecret(v, parties, rng);
}

// Runs `op` once per iteration on fresh tapes sized by `cost`.
template <typename Op>
void RunWithTapes(benchmark::State& state, int parties, const TapeBudget& cost,
                  Op op) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    state.PauseTiming();
    std::vector<DealerTape> tapes =
        GenerateTapes(parties, cost, seed++, FixedPointCodec{});
    MpcSession session(tapes, FixedPointCodec{});
    state.ResumeTiming();
    op(session);
  }
}

void BM_BeaverMul(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const Sharing a = RandomShared(dim, parties, 1.0, 1);
  const Sharing b = RandomShared(dim, parties, 1.0, 2);
  RunWithTapes(state, parties, BeaverMulCost(dim), [&](MpcSession& s) {
    benchmark::DoNotOptimize(s.BeaverMul(a, b));
  });
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(dim));
}
BENCHMARK(BM_BeaverMul)->ArgsProduct({{3, 10}, {64, 1024}});

void BM_Truncate(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const Sharing a = RandomShared(dim, parties, 1.0, 3);
  RunWithTapes(state, parties, TruncateCost(dim), [&](MpcSession& s) {
    benchmark::DoNotOptimize(s.Truncate(a));
  });
}
BENCHMARK(BM_Truncate)->ArgsProduct({{3, 10}, {64, 1024}});

void BM_Compare(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const Sharing x = RandomShared(1, parties, 1.0, 4);
  RunWithTapes(state, parties, CompareCost(), [&](MpcSession& s) {
    benchmark::DoNotOptimize(s.CompareLtPublic(x, 0));
  });
}
BENCHMARK(BM_Compare)->DenseRange(3, 10, 7);

void BM_Inverse(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const Sharing x = AddPublic(RandomShared(1, parties, 0.5, 5),
                              EncodeFixed(2.0));
  RunWithTapes(state, parties, InverseCost(), [&](MpcSession& s) {
    benchmark::DoNotOptimize(s.SecureInverse(x, 4.0));
  });
}
BENCHMARK(BM_Inverse)->DenseRange(3, 10, 7);

void BM_Sqrt(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const Sharing y = AddPublic(RandomShared(1, parties, 1.0, 6),
                              EncodeFixed(9.0));
  RunWithTapes(state, parties, SqrtCost(), [&](MpcSession& s) {
    benchmark::DoNotOptimize(s.SecureSqrt(y, 2.0, SqrtInverseBound(2.0, 10.0)));
  });
}
BENCHMARK(BM_Sqrt)->DenseRange(3, 10, 7);

void BM_Cosine(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const LinalgParams params;
  const Sharing a = RandomShared(dim, parties, 1.0, 7);
  const Sharing b = RandomShared(dim, parties, 1.0, 8);
  RunWithTapes(state, parties, CosineCost(dim, params), [&](MpcSession& s) {
    benchmark::DoNotOptimize(CosineSimilarity(s, a, b, params));
  });
}
BENCHMARK(BM_Cosine)->ArgsProduct({{3, 10}, {64, 1024}});

void BM_L2Normalize(benchmark::State& state) {
  const int parties = static_cast<int>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const LinalgParams params;
  const Sharing a = RandomShared(dim, parties, 1.0, 9);
  const Sharing b = RandomShared(dim, parties, 1.0, 10);
  RunWithTapes(state, parties, L2NormalizeCost(dim, params),
               [&](MpcSession& s) {
                 benchmark::DoNotOptimize(L2Normalize(s, a, b, params));
               });
}
BENCHMARK(BM_L2Normalize)->ArgsProduct({{3, 10}, {64, 1024}});

}  // namespace
}  // namespace securedl

BENCHMARK_MAIN();
