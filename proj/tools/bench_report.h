// Copyright 2026 The Chrisimos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef CHRISIMOS_TOOLS_BENCH_REPORT_H_
#define CHRISIMOS_TOOLS_BENCH_REPORT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chrisimos/bit_rules.h"
#include "chrisimos/graph.h"

namespace chrisimos::cli {

struct BenchRow {
  uint32_t n = 0;
  uint64_t m = 0;
  uint64_t edges_t = 0;
  double gen_seconds = 0;
  double verify_seconds = 0;
  double ratio = 0;  // gen / verify
};

struct BenchOptions {
  std::vector<uint32_t> sizes;
  GraphModel model = BarabasiAlbert{5};
  std::vector<uint64_t> seeds = {1};
  uint32_t repeats = 3;  // median over repeats, mean over seeds
  int lambda = kDefaultLambda;
};

std::vector<BenchRow> RunBench(const BenchOptions& options);

// "# hardware: <tag>" then n,m,e_t,gen_time_s,verify_time_s,ratio.
void WriteBenchCsv(const std::vector<BenchRow>& rows, const std::string& tag,
                   std::ostream& out);

struct LogLogFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

// Least squares of log(y) on log(x).
LogLogFit FitLogLog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace chrisimos::cli

#endif  // CHRISIMOS_TOOLS_BENCH_REPORT_H_
