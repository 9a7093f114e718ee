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
#include "chrisimos/timing_table.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "chrisimos/error.h"
#include "chrisimos/mining.h"
#include "chrisimos/random.h"
#include "chrisimos/transform.h"

namespace chrisimos {
namespace {

constexpr std::string_view kTableMagic = "# chrisimos-lookup-table v";
constexpr std::string_view kHardwarePrefix = "# hardware: ";

Hash256 RandomHash(Rng& rng) {
  Hash256 h{};
  for (size_t i = 0; i < h.size(); i += 8) {
    uint64_t x = rng.Next();
    for (size_t b = 0; b < 8; ++b) h[i + b] = static_cast<uint8_t>(x >> (8 * b));
  }
  return h;
}

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

[[noreturn]] void BadTable(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "lookup table: " + what);
}

}  // namespace

PipelineTiming TimePipeline(const Graph& g, uint64_t seed, int lambda) {
  Rng rng(seed);
  const Hash256 h_prev = RandomHash(rng);
  const Hash256 h_mr = RandomHash(rng);
  auto shared = std::make_shared<const Graph>(g);
  PipelineTiming t;

  using clock = std::chrono::steady_clock;
  const auto g0 = clock::now();
  const ExtendedGraph miner = ExtendedGraph::Extend(shared, h_prev, h_mr, lambda);
  const DominatingSet ds = GreedyDominatingSet(miner);
  const auto g1 = clock::now();
  t.gen_seconds = Seconds(g1 - g0);
  t.ds_size = ds.size();

  const auto v0 = clock::now();
  const ExtendedGraph verifier = ExtendedGraph::Extend(
      shared, h_prev, h_mr, lambda, miner.w_spec().delta_hat());
  std::vector<char> seen(verifier.order() + 1, 0);
  uint32_t count = 0;
  auto mark = [&](VertexId u) {
    if (!seen[u]) {
      seen[u] = 1;
      ++count;
    }
  };
  for (VertexId v : ds.vertices) {
    mark(v);
    t.verify_cells += verifier.ForEachNeighbor(v, mark);
  }
  const auto v1 = clock::now();
  t.verify_seconds = Seconds(v1 - v0);
  if (count != verifier.order()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pipeline produced a set that does not dominate G_T");
  }
  t.edges_t = miner.size();
  return t;
}

LookupTable BuildTable(const std::vector<TableConfig>& configs,
                       const std::vector<uint64_t>& seeds, int lambda) {
  struct Sums {
    double tau = 0, m = 0, delta = 0;
    int runs = 0;
  };
  std::map<uint32_t, Sums> by_n;
  for (const TableConfig& c : configs) {
    for (uint64_t seed : seeds) {
      const Graph g = GenerateGraph(c.model, c.n, seed);
      const PipelineTiming t = TimePipeline(g, MixSeed(seed, c.n), lambda);
      Sums& s = by_n[c.n];
      s.tau += t.gen_seconds + t.verify_seconds;
      s.m += static_cast<double>(g.size());
      s.delta += g.min_degree();
      ++s.runs;
    }
  }
  LookupTable table;
  table.hardware_tag = HardwareTag();
  for (const auto& [n, s] : by_n) {
    LookupEntry e;
    e.n = n;
    e.m = static_cast<uint64_t>(std::llround(s.m / s.runs));
    e.delta = static_cast<uint32_t>(std::lround(s.delta / s.runs));
    e.tau = s.tau / s.runs;
    table.entries.push_back(e);
  }
  return table;
}

double ScaleFactor(const LookupEntry& entry, uint32_t n, uint64_t m,
                   uint32_t delta) {
  auto work = [](double nn, double mm, double d) {
    return (2.0 * mm + d * (nn - 1.0)) * nn;
  };
  return work(n, static_cast<double>(m), delta) /
         work(entry.n, static_cast<double>(entry.m), entry.delta);
}

const LookupEntry& PickEntry(const LookupTable& table, uint32_t n) {
  if (table.entries.empty()) {
    throw Error(ErrorCode::kEmptyTable, "lookup table has no entries");
  }
  const LookupEntry* below = nullptr;
  const LookupEntry* smallest = &table.entries.front();
  for (const LookupEntry& e : table.entries) {
    if (e.n == n) return e;
    if (e.n < n && (below == nullptr || e.n > below->n)) below = &e;
    if (e.n < smallest->n) smallest = &e;
  }
  return below != nullptr ? *below : *smallest;
}

double EstimateTmax(const LookupTable& table, uint32_t n, uint64_t m,
                    uint32_t delta, double l) {
  if (!(l > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "interval factor l must exceed 1");
  }
  const LookupEntry& e = PickEntry(table, n);
  return l * e.tau * ScaleFactor(e, n, m, delta);
}

void WriteTable(const LookupTable& table, std::ostream& out) {
  out << kTableMagic << kTableVersion << '\n';
  out << kHardwarePrefix << table.hardware_tag << '\n';
  out << "n,m,delta,tau\n";
  for (const LookupEntry& e : table.entries) {
    out << e.n << ',' << e.m << ',' << e.delta << ','
        << std::setprecision(17) << e.tau << '\n';
  }
}

LookupTable ParseTable(std::istream& in) {
  LookupTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind(kTableMagic, 0) != 0) {
    BadTable("missing version line");
  }
  if (line.substr(kTableMagic.size()) != std::to_string(kTableVersion)) {
    BadTable("unsupported version " + line.substr(kTableMagic.size()));
  }
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind(kHardwarePrefix, 0) == 0) {
      table.hardware_tag = line.substr(kHardwarePrefix.size());
      continue;
    }
    if (line[0] == '#') continue;
    if (!header) {
      if (line != "n,m,delta,tau") BadTable("unexpected header: " + line);
      header = true;
      continue;
    }
    std::istringstream row(line);
    LookupEntry e;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> e.n >> c1 >> e.m >> c2 >> e.delta >> c3 >> e.tau) ||
        c1 != ',' || c2 != ',' || c3 != ',' || !(e.tau > 0)) {
      BadTable("bad row: " + line);
    }
    table.entries.push_back(e);
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const LookupEntry& a, const LookupEntry& b) { return a.n < b.n; });
  for (size_t i = 1; i < table.entries.size(); ++i) {
    if (table.entries[i].n == table.entries[i - 1].n) {
      BadTable("duplicate n " + std::to_string(table.entries[i].n));
    }
  }
  return table;
}

void SaveTable(const LookupTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  WriteTable(table, out);
}

LookupTable LoadTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ParseTable(in);
}

std::string HardwareTag() {
  std::string model = "unknown-cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        model = line.substr(line.find_first_not_of(' ', colon + 1));
      }
      break;
    }
  }
  std::replace(model.begin(), model.end(), ',', ' ');
  return model + " x" + std::to_string(std::thread::hardware_concurrency());
}

}  // namespace chrisimos
