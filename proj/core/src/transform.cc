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
#include "chrisimos/transform.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "chrisimos/error.h"

namespace chrisimos {

ExtendedGraph::ExtendedGraph(std::shared_ptr<const Graph> g, EdgeMask mask,
                             uint32_t delta_hat)
    : base_(std::move(g)),
      ranking_(RankVertices(*base_)),
      mask_(std::move(mask)),
      w_spec_(base_->order(), delta_hat) {
  const uint32_t n = base_->order();
  bit_offset_.resize(n + 1);
  bit_offset_[0] = 0;
  for (uint32_t r = 0; r < n; ++r) {
    bit_offset_[r + 1] = bit_offset_[r] + base_->Degree(ranking_.order[r]);
  }
  if (mask_.length() < bit_offset_[n]) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge mask shorter than 2|E| = " + std::to_string(bit_offset_[n]));
  }
  mirror_adjacency_.resize(n);
  for (uint64_t pos : WAdjacencyOnes(w_spec_)) {
    const auto [a, b] = TriangularToPair(pos, n);
    mirror_adjacency_[a - 1].push_back(b - 1);
    mirror_adjacency_[b - 1].push_back(a - 1);
  }
  for (auto& list : mirror_adjacency_) std::sort(list.begin(), list.end());
}

ExtendedGraph ExtendedGraph::Extend(std::shared_ptr<const Graph> g,
                                    const Hash256& h_prev, const Hash256& h_mr,
                                    int lambda) {
  const uint32_t delta_hat = 2 * g->min_degree();
  return Extend(std::move(g), h_prev, h_mr, lambda, delta_hat);
}

ExtendedGraph ExtendedGraph::Extend(std::shared_ptr<const Graph> g,
                                    const Hash256& h_prev, const Hash256& h_mr,
                                    int lambda, uint32_t delta_hat) {
  EdgeMask mask = ExpandK(h_prev, h_mr, 2 * g->size(), lambda);
  return ExtendedGraph(std::move(g), std::move(mask), delta_hat);
}

ExtendedGraph ExtendedGraph::WithMask(std::shared_ptr<const Graph> g,
                                      EdgeMask mask) {
  const uint32_t delta_hat = 2 * g->min_degree();
  return ExtendedGraph(std::move(g), std::move(mask), delta_hat);
}

ExtendedGraph ExtendedGraph::WithMask(std::shared_ptr<const Graph> g,
                                      EdgeMask mask, uint32_t delta_hat) {
  return ExtendedGraph(std::move(g), std::move(mask), delta_hat);
}

const ExtendedGraph::DegreeCache& ExtendedGraph::Degrees() const {
  std::call_once(degrees_->once, [this] {
    const uint32_t n = base_->order();
    auto& degree = degrees_->degree;
    degree.assign(2 * static_cast<size_t>(n), 0);
    for (uint32_t r = 0; r < n; ++r) {
      const VertexId v = ranking_.order[r];
      degree[v - 1] += base_->Degree(v);
      degree[n + r] += static_cast<uint32_t>(mirror_adjacency_[r].size());
      const auto nbrs = base_->Neighbors(v);
      for (uint64_t l = 0; l < nbrs.size(); ++l) {
        if (mask_.bit(MaskPosition(r, l))) {
          ++degree[nbrs[l] - 1];
          ++degree[n + r];
        }
      }
    }
    uint64_t twice_edges = 0;
    for (uint32_t d : degree) twice_edges += d;
    degrees_->size = twice_edges / 2;
    degrees_->min_degree =
        degree.empty() ? 0 : *std::min_element(degree.begin(), degree.end());
  });
  return *degrees_;
}

std::vector<VertexId> ExtendedGraph::Neighbors(VertexId v) const {
  if (v < 1 || v > order()) {
    throw Error(ErrorCode::kVertexOutOfRange,
                "vertex " + std::to_string(v) + " outside 1.." +
                    std::to_string(order()));
  }
  std::vector<VertexId> out;
  ForEachNeighbor(v, [&out](VertexId u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

Graph ExtendedGraph::Materialize() const {
  const uint32_t n = base_->order();
  std::vector<Edge> edges = base_->Edges();
  edges.reserve(edges.size() + mask_.length() / 2 + n * 2);
  for (uint32_t r = 0; r < n; ++r) {
    const VertexId w = n + r + 1;
    const auto nbrs = base_->Neighbors(ranking_.order[r]);
    for (uint64_t l = 0; l < nbrs.size(); ++l) {
      if (mask_.bit(MaskPosition(r, l))) edges.push_back({nbrs[l], w});
    }
    for (uint32_t b : mirror_adjacency_[r]) {
      if (b > r) edges.push_back({w, n + b + 1});
    }
  }
  return Graph::FromEdges(2 * n, edges);
}

double ComputeBound(uint64_t n_prime, uint64_t delta_prime) {
  const double d = static_cast<double>(delta_prime);
  return static_cast<double>(n_prime) * (1.0 + std::log1p(d)) / (1.0 + d);
}

}  // namespace chrisimos
