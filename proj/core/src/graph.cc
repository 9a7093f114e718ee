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
#include "chrisimos/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "chrisimos/error.h"
#include "chrisimos/random.h"

namespace chrisimos {

Graph Graph::FromEdges(uint32_t n, std::span<const Edge> edges,
                       uint64_t* duplicates) {
  if (n == 0) throw Error(ErrorCode::kEmptyGraph, "graph has no vertices");
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
      throw Error(ErrorCode::kVertexOutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") outside 1.." + std::to_string(n));
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kSelfLoop, "self-loop on " + std::to_string(e.u));
    }
    normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(normalized.begin(), normalized.end());
  const auto last = std::unique(normalized.begin(), normalized.end());
  if (duplicates != nullptr) {
    *duplicates = static_cast<uint64_t>(normalized.end() - last);
  }
  normalized.erase(last, normalized.end());

  Graph g;
  g.n_ = n;
  g.m_ = normalized.size();
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : normalized) {
    ++g.offsets_[e.u];
    ++g.offsets_[e.v];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(2 * g.m_);
  std::vector<uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : normalized) g.adjacency_[cursor[e.u - 1]++] = e.v;
  for (const Edge& e : normalized) g.adjacency_[cursor[e.v - 1]++] = e.u;
  for (VertexId v = 1; v <= n; ++v) {
    auto* begin = g.adjacency_.data() + g.offsets_[v - 1];
    auto* end = g.adjacency_.data() + g.offsets_[v];
    std::sort(begin, end);
  }
  g.min_degree_ = std::numeric_limits<uint32_t>::max();
  g.max_degree_ = 0;
  for (VertexId v = 1; v <= n; ++v) {
    g.min_degree_ = std::min(g.min_degree_, g.Degree(v));
    g.max_degree_ = std::max(g.max_degree_, g.Degree(v));
  }
  return g;
}

bool Graph::HasEdge(VertexId u, VertexId v) const {
  return NeighborIndex(u, v) >= 0;
}

int64_t Graph::NeighborIndex(VertexId v, VertexId u) const {
  const auto nbrs = Neighbors(v);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u);
  if (it == nbrs.end() || *it != u) return -1;
  return it - nbrs.begin();
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (VertexId u = 1; u <= n_; ++u) {
    for (VertexId v : Neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

VertexRanking RankVertices(const Graph& g) {
  VertexRanking ranking;
  ranking.order.resize(g.order());
  std::iota(ranking.order.begin(), ranking.order.end(), VertexId{1});
  std::stable_sort(ranking.order.begin(), ranking.order.end(),
                   [&g](VertexId a, VertexId b) {
                     return g.Degree(a) > g.Degree(b);
                   });
  ranking.position.assign(g.order() + 1, 0);
  for (uint32_t i = 0; i < ranking.order.size(); ++i) {
    ranking.position[ranking.order[i]] = i;
  }
  return ranking;
}

namespace {

bool ParseInts(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      return false;
    }
    if (used != token.size()) return false;
    out.push_back(value);
  }
  return true;
}

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Graph ParseGraph(std::istream& in, LoadReport* report) {
  std::string line;
  std::vector<long long> fields;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (IsBlank(line)) continue;
    have_header = true;
    break;
  }
  if (!have_header || !ParseInts(line, fields) || fields.size() != 2 ||
      fields[0] < 0 || fields[1] < 0 ||
      fields[0] > std::numeric_limits<uint32_t>::max()) {
    throw Error(ErrorCode::kMalformedHeader,
                "expected header line \"n m\", got \"" + line + "\"");
  }
  const auto n = static_cast<uint32_t>(fields[0]);
  const auto m = static_cast<uint64_t>(fields[1]);
  if (n == 0) throw Error(ErrorCode::kEmptyGraph, "header declares n = 0");

  std::vector<Edge> edges;
  edges.reserve(m);
  uint64_t line_no = 1;
  while (edges.size() < m && std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    if (!ParseInts(line, fields) || fields.size() != 2) {
      throw Error(ErrorCode::kMalformedEdge,
                  "line " + std::to_string(line_no) + ": \"" + line + "\"");
    }
    if (fields[0] < 1 || fields[0] > n || fields[1] < 1 || fields[1] > n) {
      throw Error(ErrorCode::kVertexOutOfRange,
                  "line " + std::to_string(line_no) + ": \"" + line +
                      "\" outside 1.." + std::to_string(n));
    }
    if (fields[0] == fields[1]) {
      throw Error(ErrorCode::kSelfLoop,
                  "line " + std::to_string(line_no) + ": \"" + line + "\"");
    }
    edges.push_back({static_cast<VertexId>(fields[0]),
                     static_cast<VertexId>(fields[1])});
  }
  if (edges.size() < m) {
    throw Error(ErrorCode::kMalformedEdge,
                "header declares " + std::to_string(m) + " edges, found " +
                    std::to_string(edges.size()));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!IsBlank(line)) {
      throw Error(ErrorCode::kMalformedEdge,
                  "line " + std::to_string(line_no) +
                      ": more edges than the header declares");
    }
  }
  uint64_t duplicates = 0;
  Graph g = Graph::FromEdges(n, edges, &duplicates);
  if (report != nullptr) report->duplicate_edges = duplicates;
  return g;
}

Graph LoadGraph(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ParseGraph(in, report);
}

void WriteGraph(const Graph& g, std::ostream& out) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.Edges()) out << e.u << ' ' << e.v << '\n';
}

void SaveGraph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  WriteGraph(g, out);
}

std::string GraphToText(const Graph& g) {
  std::ostringstream out;
  WriteGraph(g, out);
  return out.str();
}

namespace {

std::vector<Edge> SampleErdosRenyi(uint32_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  if (p <= 0.0) return edges;
  if (p >= 1.0) {
    for (VertexId u = 1; u <= n; ++u) {
      for (VertexId v = u + 1; v <= n; ++v) edges.push_back({u, v});
    }
    return edges;
  }
  // Geometric skipping over the lower triangle (Batagelj & Brandes).
  const double log_q = std::log1p(-p);
  int64_t v = 1;
  int64_t w = -1;
  while (v < n) {
    const double r = rng.Unit();
    w += 1 + static_cast<int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) {
      edges.push_back({static_cast<VertexId>(w + 1),
                       static_cast<VertexId>(v + 1)});
    }
  }
  return edges;
}

std::vector<Edge> SampleBarabasiAlbert(uint32_t n, uint32_t m_attach,
                                       Rng& rng) {
  // Start from a star on m_attach + 1 vertices, then attach each new vertex
  // to m_attach distinct targets drawn proportionally to degree.
  std::vector<Edge> edges;
  std::vector<VertexId> repeated;
  for (VertexId leaf = 2; leaf <= m_attach + 1; ++leaf) {
    edges.push_back({1, leaf});
    repeated.push_back(1);
    repeated.push_back(leaf);
  }
  std::vector<VertexId> targets;
  for (VertexId source = m_attach + 2; source <= n; ++source) {
    targets.clear();
    while (targets.size() < m_attach) {
      const VertexId pick = repeated[rng.Below(repeated.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (VertexId t : targets) {
      edges.push_back({t, source});
      repeated.push_back(t);
      repeated.push_back(source);
    }
  }
  return edges;
}

}  // namespace

Graph GenerateGraph(const GraphModel& model, uint32_t n, uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidModelParams, "need at least 2 vertices");
  }
  if (const auto* ba = std::get_if<BarabasiAlbert>(&model)) {
    if (ba->m_attach < 1 || ba->m_attach >= n) {
      throw Error(ErrorCode::kInvalidModelParams,
                  "barabasi_albert requires 1 <= m_attach < n");
    }
  } else {
    const double p = std::get<ErdosRenyi>(model).p_edge;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidModelParams,
                  "erdos_renyi requires 0 <= p_edge <= 1");
    }
  }
  for (int attempt = 0; attempt < kGeneratorRetryCap; ++attempt) {
    Rng rng(MixSeed(seed, static_cast<uint64_t>(attempt)));
    std::vector<Edge> edges = std::visit(
        [&](const auto& params) {
          using T = std::decay_t<decltype(params)>;
          if constexpr (std::is_same_v<T, BarabasiAlbert>) {
            return SampleBarabasiAlbert(n, params.m_attach, rng);
          } else {
            return SampleErdosRenyi(n, params.p_edge, rng);
          }
        },
        model);
    Graph g = Graph::FromEdges(n, edges);
    if (g.min_degree() >= 1) return g;
  }
  throw Error(ErrorCode::kRetryExhausted,
              "no instance with minimum degree >= 1 after " +
                  std::to_string(kGeneratorRetryCap) + " attempts");
}

}  // namespace chrisimos
