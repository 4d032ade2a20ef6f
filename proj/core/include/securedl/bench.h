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

#ifndef SECUREDL_BENCH_H_
#define SECUREDL_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "securedl/transport.h"

namespace securedl {

// Median wall time of one protocol call with `parties` parties.
struct BenchRow {
  int parties = 0;
  double cosine_ms = 0.0;
  double compare_ms = 0.0;
  double norm_ms = 0.0;
  double beaver_ms = 0.0;
  TransportStats cosine_transport;
};

struct BenchOptions {
  std::size_t dim = 1024;
  int repetitions = 7;
  std::uint64_t seed = 1;
};

std::vector<BenchRow> RunBench(std::span<const int> party_counts,
                               const BenchOptions& options);

void WriteBenchTable(std::span<const BenchRow> rows, std::ostream& out);

}  // namespace securedl

#endif  // SECUREDL_BENCH_H_
