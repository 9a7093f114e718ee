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
#ifndef CHRISIMOS_TRANSFORM_H_
#define CHRISIMOS_TRANSFORM_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "chrisimos/bit_rules.h"
#include "chrisimos/crypto.h"
#include "chrisimos/graph.h"

namespace chrisimos {

// The per-miner extended graph G_T on 2n vertices. Ids 1..n are the
// original vertices; id n+i is the mirror vertex w_i paired with the i-th
// ranked vertex v_i.
//
// Edges:
//  * every edge of G;
//  * w_i -- (l-th neighbor of v_i) iff mask bit sum_{m<i}|N_m| + l is set;
//  * w_a -- w_b iff the triangular position of (a, b) is a W-adjacency one.
//
// Construction is O(n log n + number of W-side ones). V--W incidences are
// resolved lazily from the mask, so the object never stores G_T's edges.
class ExtendedGraph {
 public:
  // Derives the mask from S = H(h_prev || h_mr) and uses delta_hat = 2 * delta.
  static ExtendedGraph Extend(std::shared_ptr<const Graph> g,
                              const Hash256& h_prev, const Hash256& h_mr,
                              int lambda = kDefaultLambda);
  // Same, with an explicit delta_hat (as carried in a block header).
  static ExtendedGraph Extend(std::shared_ptr<const Graph> g,
                              const Hash256& h_prev, const Hash256& h_mr,
                              int lambda, uint32_t delta_hat);
  // Uses the given mask instead of the hash-derived one.
  static ExtendedGraph WithMask(std::shared_ptr<const Graph> g, EdgeMask mask);
  static ExtendedGraph WithMask(std::shared_ptr<const Graph> g, EdgeMask mask,
                                uint32_t delta_hat);

  const Graph& base() const { return *base_; }
  uint32_t base_order() const { return base_->order(); }
  uint32_t order() const { return 2 * base_->order(); }
  const VertexRanking& ranking() const { return ranking_; }
  const EdgeMask& edge_mask() const { return mask_; }
  const WAdjacencySpec& w_spec() const { return w_spec_; }

  bool IsMirror(VertexId v) const { return v > base_->order(); }
  // The original vertex v_i paired with mirror vertex w_i (id n+i).
  VertexId Partner(VertexId mirror) const {
    return ranking_.order[mirror - base_->order() - 1];
  }
  VertexId MirrorOf(VertexId v) const {
    return base_->order() + ranking_.position[v] + 1;
  }

  // Exact degrees in G_T. Computed in O(|E|) on first use so that verifiers,
  // which only walk the neighborhoods of set members, never pay for them.
  uint32_t Degree(VertexId v) const { return Degrees().degree[v - 1]; }
  uint32_t min_degree() const { return Degrees().min_degree; }
  uint64_t size() const { return Degrees().size; }

  // Sorted neighbor list; throws Error(kVertexOutOfRange).
  std::vector<VertexId> Neighbors(VertexId v) const;

  // Calls f(u) for every neighbor u of v in unspecified order. Returns the
  // number of adjacency cells inspected.
  template <typename F>
  uint64_t ForEachNeighbor(VertexId v, F&& f) const;

  // Mirror neighbors of an original vertex v, i.e. the w_i with v adjacent.
  template <typename F>
  uint64_t ForEachMirrorNeighbor(VertexId v, F&& f) const;
  // Original-vertex neighbors of a mirror vertex.
  template <typename F>
  uint64_t ForEachBaseNeighborOfMirror(VertexId w, F&& f) const;

  // Full G_T as an explicit graph on 2n vertices.
  Graph Materialize() const;

 private:
  ExtendedGraph(std::shared_ptr<const Graph> g, EdgeMask mask,
                uint32_t delta_hat);

  // Mask position of the l-th (0-based) neighbor of the rank-r vertex.
  uint64_t MaskPosition(uint32_t rank, uint64_t l) const {
    return bit_offset_[rank] + l + 1;
  }

  std::shared_ptr<const Graph> base_;
  VertexRanking ranking_;
  std::vector<uint64_t> bit_offset_;  // by rank
  EdgeMask mask_;
  WAdjacencySpec w_spec_;
  // W-local adjacency (0-based rank indices) from the closed-form ones.
  std::vector<std::vector<uint32_t>> mirror_adjacency_;
  struct DegreeCache {
    std::once_flag once;
    std::vector<uint32_t> degree;
    uint32_t min_degree = 0;
    uint64_t size = 0;
  };
  const DegreeCache& Degrees() const;
  std::shared_ptr<DegreeCache> degrees_ = std::make_shared<DegreeCache>();
};

// k = n'(1 + ln(1 + delta')) / (1 + delta').
double ComputeBound(uint64_t n_prime, uint64_t delta_prime);

template <typename F>
uint64_t ExtendedGraph::ForEachMirrorNeighbor(VertexId v, F&& f) const {
  uint64_t cells = 0;
  for (VertexId u : base_->Neighbors(v)) {
    const uint32_t rank = ranking_.position[u];
    const int64_t l = base_->NeighborIndex(u, v);
    ++cells;
    if (mask_.bit(MaskPosition(rank, static_cast<uint64_t>(l)))) {
      f(base_->order() + rank + 1);
    }
  }
  return cells;
}

template <typename F>
uint64_t ExtendedGraph::ForEachBaseNeighborOfMirror(VertexId w, F&& f) const {
  const uint32_t rank = w - base_->order() - 1;
  const auto nbrs = base_->Neighbors(ranking_.order[rank]);
  for (uint64_t l = 0; l < nbrs.size(); ++l) {
    if (mask_.bit(MaskPosition(rank, l))) f(nbrs[l]);
  }
  return nbrs.size();
}

template <typename F>
uint64_t ExtendedGraph::ForEachNeighbor(VertexId v, F&& f) const {
  if (!IsMirror(v)) {
    uint64_t cells = 0;
    for (VertexId u : base_->Neighbors(v)) {
      f(u);
      ++cells;
    }
    return cells + ForEachMirrorNeighbor(v, f);
  }
  uint64_t cells = ForEachBaseNeighborOfMirror(v, f);
  for (uint32_t b : mirror_adjacency_[v - base_->order() - 1]) {
    f(base_->order() + b + 1);
    ++cells;
  }
  return cells;
}

}  // namespace chrisimos

#endif  // CHRISIMOS_TRANSFORM_H_
