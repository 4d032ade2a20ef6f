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

#include "securedl/report.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "securedl/errors.h"

#ifndef SECUREDL_GIT_DESCRIBE
#define SECUREDL_GIT_DESCRIBE "unknown"
#endif

namespace securedl {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double Ms(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double, std::milli>(ns).count();
}

}  // namespace

void WriteCsv(std::span<const RoundMetrics> rounds, bool timing,
              std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const RoundMetrics& m : rounds) {
    out << m.round << ',' << Fixed(m.mean_acc, 6) << ','
        << Fixed(m.min_acc, 6) << ',' << Fixed(m.max_acc, 6) << ','
        << Fixed(m.loss, 6) << ',' << m.rejected_count << ','
        << Fixed(timing ? Ms(m.times.cosine) : 0.0, 3) << ','
        << Fixed(timing ? Ms(m.times.compare) : 0.0, 3) << ','
        << Fixed(timing ? Ms(m.times.normalize) : 0.0, 3) << '\n';
  }
}

void WriteCsvFile(std::span<const RoundMetrics> rounds, bool timing,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  WriteCsv(rounds, timing, out);
}

CsvTable ReadCsv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  std::size_t offset = line.size() + 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cell.size()) {
        throw ParseError("csv: non-numeric cell '" + cell + "'", offset);
      }
      row.push_back(v);
    }
    if (row.size() != t.header.size()) {
      throw ParseError("csv: row width differs from header", offset);
    }
    t.rows.push_back(std::move(row));
    offset += line.size() + 1;
  }
  return t;
}

std::string GitDescribe() { return SECUREDL_GIT_DESCRIBE; }

}  // namespace securedl
