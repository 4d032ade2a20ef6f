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

#ifndef SECUREDL_REPORT_H_
#define SECUREDL_REPORT_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "securedl/dealer.h"
#include "securedl/securedl_rule.h"
#include "securedl/transport.h"

namespace securedl {

struct RoundMetrics {
  int round = 0;
  // Test accuracy of every client's model after aggregation.
  std::vector<double> client_accuracy;
  // Aggregates over honest clients only.
  double mean_acc = 0.0;
  double min_acc = 0.0;
  double max_acc = 0.0;
  double loss = 0.0;
  int rejected_count = 0;
  // accept[i][k]: receiver i accepted its k-th sender (SecureDL only).
  std::vector<std::vector<bool>> accept;
  PhaseTimes times;
  TapeBudget dealer_provisioned;
  TapeBudget dealer_consumed;
  TransportStats transport;
};

inline constexpr const char* kCsvHeader =
    "round,mean_acc,min_acc,max_acc,loss,rejected_count,t_cosine_ms,"
    "t_compare_ms,t_norm_ms";

// Timing columns are 0 unless `timing` is set.
void WriteCsv(std::span<const RoundMetrics> rounds, bool timing,
              std::ostream& out);
void WriteCsvFile(std::span<const RoundMetrics> rounds, bool timing,
                  const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable ReadCsv(std::istream& in);

// Build identification baked in at configure time.
std::string GitDescribe();

}  // namespace securedl

#endif  // SECUREDL_REPORT_H_
