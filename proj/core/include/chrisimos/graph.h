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
#ifndef CHRISIMOS_GRAPH_H_
#define CHRISIMOS_GRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace chrisimos {

// Vertices are numbered 1..n throughout the library.
using VertexId = uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph stored in compressed sparse rows.
// Neighbor lists are sorted ascending by vertex id, which fixes the order in
// which the extension rules read them.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from an edge list. Self-loops and out-of-range endpoints
  // are errors; duplicate edges are dropped and reported through
  // `duplicates` when it is non-null.
  static Graph FromEdges(uint32_t n, std::span<const Edge> edges,
                         uint64_t* duplicates = nullptr);

  uint32_t order() const { return n_; }
  uint64_t size() const { return m_; }

  std::span<const VertexId> Neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v - 1],
            adjacency_.data() + offsets_[v]};
  }
  uint32_t Degree(VertexId v) const {
    return static_cast<uint32_t>(offsets_[v] - offsets_[v - 1]);
  }
  uint32_t min_degree() const { return min_degree_; }
  uint32_t max_degree() const { return max_degree_; }

  bool HasEdge(VertexId u, VertexId v) const;

  // Position of `u` inside the sorted neighbor list of `v`, or -1.
  int64_t NeighborIndex(VertexId v, VertexId u) const;

  // All edges with u < v, sorted lexicographically.
  std::vector<Edge> Edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ &&
           a.adjacency_ == b.adjacency_;
  }

 private:
  uint32_t n_ = 0;
  uint64_t m_ = 0;
  uint32_t min_degree_ = 0;
  uint32_t max_degree_ = 0;
  std::vector<uint64_t> offsets_;
  std::vector<VertexId> adjacency_;
};

// Descending degree, ties by ascending id. order[i] is the (i+1)-th ranked
// vertex; position[v] is the zero-based rank of v.
struct VertexRanking {
  std::vector<VertexId> order;
  std::vector<uint32_t> position;  // indexed by vertex id, slot 0 unused
};

VertexRanking RankVertices(const Graph& g);

// Edge-list text format: a header line "n m" followed by m lines "u v".
struct LoadReport {
  uint64_t duplicate_edges = 0;
};

Graph ParseGraph(std::istream& in, LoadReport* report = nullptr);
Graph LoadGraph(const std::string& path, LoadReport* report = nullptr);
void WriteGraph(const Graph& g, std::ostream& out);
void SaveGraph(const Graph& g, const std::string& path);
std::string GraphToText(const Graph& g);

struct BarabasiAlbert {
  uint32_t m_attach = 1;
};
struct ErdosRenyi {
  double p_edge = 0.0;
};
using GraphModel = std::variant<BarabasiAlbert, ErdosRenyi>;

inline constexpr int kGeneratorRetryCap = 16;

// Deterministic in (model, n, seed). Instances with an isolated vertex are
// resampled up to kGeneratorRetryCap times.
Graph GenerateGraph(const GraphModel& model, uint32_t n, uint64_t seed);

}  // namespace chrisimos

#endif  // CHRISIMOS_GRAPH_H_
