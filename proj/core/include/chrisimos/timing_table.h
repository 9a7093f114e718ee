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
#ifndef CHRISIMOS_TIMING_TABLE_H_
#define CHRISIMOS_TIMING_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chrisimos/bit_rules.h"
#include "chrisimos/graph.h"

namespace chrisimos {

inline constexpr double kDefaultIntervalFactor = 2.0;  // l
inline constexpr int kTableVersion = 1;

struct LookupEntry {
  uint32_t n = 0;
  uint64_t m = 0;
  uint32_t delta = 0;
  double tau = 0;  // seconds, generation + verification

  friend bool operator==(const LookupEntry&, const LookupEntry&) = default;
};

struct LookupTable {
  std::string hardware_tag;
  std::vector<LookupEntry> entries;  // sorted by n, one per n
};

// One timed mine + verify run on a random extension of g.
struct PipelineTiming {
  uint64_t edges_t = 0;  // |E_T|
  size_t ds_size = 0;
  double gen_seconds = 0;
  double verify_seconds = 0;
  uint64_t verify_cells = 0;
};

// Extends g with digests drawn from seed, times a single greedy pass and the
// lazy coverage check of its output.
PipelineTiming TimePipeline(const Graph& g, uint64_t seed,
                            int lambda = kDefaultLambda);

struct TableConfig {
  GraphModel model;
  uint32_t n = 0;
};

// Configs sharing n are merged into one entry: tau, m and delta are means
// over every (config, seed) run with that n.
LookupTable BuildTable(const std::vector<TableConfig>& configs,
                       const std::vector<uint64_t>& seeds,
                       int lambda = kDefaultLambda);

// Scaling factor [(2m + d(n-1)) n] / [(2m* + d*(n*-1)) n*].
double ScaleFactor(const LookupEntry& entry, uint32_t n, uint64_t m,
                   uint32_t delta);
// Entry with equal n, else the largest n below, else the smallest entry.
const LookupEntry& PickEntry(const LookupTable& table, uint32_t n);

// l * tau * factor in seconds. Throws Error(kEmptyTable), and
// Error(kInvalidArgument) unless l > 1.
double EstimateTmax(const LookupTable& table, uint32_t n, uint64_t m,
                    uint32_t delta, double l = kDefaultIntervalFactor);

// CSV: "# chrisimos-lookup-table v1", "# hardware: <tag>", then
// "n,m,delta,tau" rows.
void WriteTable(const LookupTable& table, std::ostream& out);
LookupTable ParseTable(std::istream& in);
void SaveTable(const LookupTable& table, const std::string& path);
LookupTable LoadTable(const std::string& path);

// CPU model and core count, used to label every timing output.
std::string HardwareTag();

}  // namespace chrisimos

#endif  // CHRISIMOS_TIMING_TABLE_H_
