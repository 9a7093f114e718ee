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
#include "bench_report.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "chrisimos/error.h"
#include "chrisimos/random.h"
#include "chrisimos/timing_table.h"

namespace chrisimos::cli {
namespace {

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::vector<BenchRow> RunBench(const BenchOptions& options) {
  if (options.repeats == 0 || options.seeds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bench needs seeds and repeats");
  }
  std::vector<BenchRow> rows;
  for (uint32_t n : options.sizes) {
    BenchRow row;
    row.n = n;
    double m = 0, e_t = 0;
    for (uint64_t seed : options.seeds) {
      const Graph g = GenerateGraph(options.model, n, seed);
      std::vector<double> gen, verify;
      uint64_t edges_t = 0;
      for (uint32_t r = 0; r < options.repeats; ++r) {
        const PipelineTiming t = TimePipeline(g, MixSeed(seed, n), options.lambda);
        gen.push_back(t.gen_seconds);
        verify.push_back(t.verify_seconds);
        edges_t = t.edges_t;
      }
      row.gen_seconds += Median(gen);
      row.verify_seconds += Median(verify);
      m += static_cast<double>(g.size());
      e_t += static_cast<double>(edges_t);
    }
    const double k = static_cast<double>(options.seeds.size());
    row.gen_seconds /= k;
    row.verify_seconds /= k;
    row.m = static_cast<uint64_t>(std::llround(m / k));
    row.edges_t = static_cast<uint64_t>(std::llround(e_t / k));
    row.ratio = row.verify_seconds > 0 ? row.gen_seconds / row.verify_seconds : 0;
    rows.push_back(row);
  }
  return rows;
}

void WriteBenchCsv(const std::vector<BenchRow>& rows, const std::string& tag,
                   std::ostream& out) {
  out << "# hardware: " << tag << '\n';
  out << "n,m,e_t,gen_time_s,verify_time_s,ratio\n";
  for (const BenchRow& r : rows) {
    out << r.n << ',' << r.m << ',' << r.edges_t << ',' << r.gen_seconds << ','
        << r.verify_seconds << ',' << r.ratio << '\n';
  }
}

LogLogFit FitLogLog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "fit needs two or more points");
  }
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double cov = sxy - sx * sy / k;
  const double vx = sxx - sx * sx / k;
  const double vy = syy - sy * sy / k;
  LogLogFit fit;
  fit.slope = cov / vx;
  fit.intercept = (sy - fit.slope * sx) / k;
  fit.r2 = vy > 0 ? cov * cov / (vx * vy) : 1.0;
  return fit;
}

}  // namespace chrisimos::cli
