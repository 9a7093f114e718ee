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
#include "chrisimos/mining.h"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>
#include <utility>

#include "chrisimos/error.h"
#include "chrisimos/random.h"

namespace chrisimos {
namespace {

// Adapts both graph kinds to a closed-neighborhood walk.
struct PlainView {
  const Graph& g;
  uint32_t order() const { return g.order(); }
  template <typename F>
  uint64_t ForEachNeighbor(VertexId v, F&& f) const {
    const auto nbrs = g.Neighbors(v);
    for (VertexId u : nbrs) f(u);
    return nbrs.size();
  }
  uint32_t Degree(VertexId v) const { return g.Degree(v); }
};

struct ExtendedView {
  const ExtendedGraph& eg;
  uint32_t order() const { return eg.order(); }
  template <typename F>
  uint64_t ForEachNeighbor(VertexId v, F&& f) const {
    return eg.ForEachNeighbor(v, f);
  }
  uint32_t Degree(VertexId v) const { return eg.Degree(v); }
};

template <typename View>
bool IsDominatingImpl(const View& view, std::span<const VertexId> set) {
  const uint32_t n = view.order();
  std::vector<char> covered(n + 1, 0);
  uint32_t count = 0;
  auto mark = [&](VertexId u) {
    if (!covered[u]) {
      covered[u] = 1;
      ++count;
    }
  };
  for (VertexId v : set) {
    if (v < 1 || v > n) return false;
    mark(v);
    view.ForEachNeighbor(v, mark);
  }
  return count == n;
}

template <typename View>
DominatingSet GreedyImpl(const View& view, const GreedyOptions& options) {
  const uint32_t n = view.order();
  const bool keyed = !options.tie_keys.empty();
  if (keyed && options.tie_keys.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "tie_keys must have one entry per vertex");
  }
  auto key = [&](VertexId v) -> uint64_t {
    return keyed ? options.tie_keys[v - 1] : 0;
  };
  std::vector<uint32_t> gain(n + 1, 0);
  std::vector<char> covered(n + 1, 0);
  uint64_t cells = 0;

  // Max gain first, then min key, then min id.
  using Entry = std::tuple<uint32_t, uint64_t, VertexId>;
  auto worse = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) > std::get<2>(b);
  };
  std::vector<Entry> entries;
  entries.reserve(n);
  for (VertexId v = 1; v <= n; ++v) {
    gain[v] = view.Degree(v) + 1;
    entries.emplace_back(gain[v], key(v), v);
  }
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(
      worse, std::move(entries));

  DominatingSet ds;
  uint32_t uncovered = n;
  std::vector<VertexId> fresh;
  while (uncovered > 0) {
    auto [g, k, v] = heap.top();
    heap.pop();
    if (covered[v]) continue;
    if (g != gain[v]) {
      heap.emplace(gain[v], k, v);
      continue;
    }
    ds.vertices.push_back(v);
    fresh.clear();
    fresh.push_back(v);
    cells += view.ForEachNeighbor(v, [&](VertexId u) {
      if (!covered[u]) fresh.push_back(u);
    });
    for (VertexId u : fresh) {
      covered[u] = 1;
      --uncovered;
    }
    // Each newly covered vertex lowers the gain of its closed neighborhood.
    for (VertexId u : fresh) {
      --gain[u];
      cells += view.ForEachNeighbor(u, [&](VertexId x) { --gain[x]; });
    }
  }
  std::sort(ds.vertices.begin(), ds.vertices.end());
  if (options.cells != nullptr) *options.cells = cells;
  return ds;
}

}  // namespace

bool IsDominating(const Graph& g, std::span<const VertexId> set) {
  return IsDominatingImpl(PlainView{g}, set);
}

bool IsDominating(const ExtendedGraph& eg, std::span<const VertexId> set) {
  return IsDominatingImpl(ExtendedView{eg}, set);
}

DominatingSet GreedyDominatingSet(const Graph& g, const GreedyOptions& options) {
  return GreedyImpl(PlainView{g}, options);
}

DominatingSet GreedyDominatingSet(const ExtendedGraph& eg,
                                  const GreedyOptions& options) {
  return GreedyImpl(ExtendedView{eg}, options);
}

DominatingSet BruteMinDominatingSet(const Graph& g) {
  const uint32_t n = g.order();
  if (n > kBruteForceLimit) {
    throw Error(ErrorCode::kTooLarge, "brute force limited to " +
                                          std::to_string(kBruteForceLimit) +
                                          " vertices, got " + std::to_string(n));
  }
  const uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<uint32_t> closed(n);
  for (VertexId v = 1; v <= n; ++v) {
    closed[v - 1] = 1u << (v - 1);
    for (VertexId u : g.Neighbors(v)) closed[v - 1] |= 1u << (u - 1);
  }
  // Combinations of each size in lexicographic order.
  for (uint32_t k = 1; k <= n; ++k) {
    std::vector<uint32_t> idx(k);
    for (uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      uint32_t mask = 0;
      for (uint32_t i : idx) mask |= closed[i];
      if (mask == all) {
        DominatingSet ds;
        for (uint32_t i : idx) ds.vertices.push_back(i + 1);
        return ds;
      }
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};
}

LogicalClock::LogicalClock(uint64_t cells_per_tick, uint64_t start)
    : cells_per_tick_(cells_per_tick), now_(start) {
  if (cells_per_tick_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cells_per_tick must be positive");
  }
}

void LogicalClock::Charge(uint64_t cells) {
  now_ += (cells + cells_per_tick_ - 1) / cells_per_tick_;
}

uint64_t SteadyClock::Now() const {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start_)
          .count());
}

std::optional<DominatingSet> GreedySolver::Next(const ExtendedGraph& eg,
                                                Clock& clock) {
  if (pass_ > restarts_) return std::nullopt;
  GreedyOptions options;
  uint64_t cells = 0;
  options.cells = &cells;
  if (pass_ > 0) {
    Rng rng(MixSeed(seed_, pass_));
    options.tie_keys.resize(eg.order());
    for (auto& k : options.tie_keys) k = rng.Next();
  }
  ++pass_;
  DominatingSet ds = GreedyDominatingSet(eg, options);
  clock.Charge(cells);
  return ds;
}

std::string_view MineOutcomeName(MineOutcome outcome) {
  switch (outcome) {
    case MineOutcome::kBlock: return "block";
    case MineOutcome::kAbortBadInstance: return "abort_bad_instance";
    case MineOutcome::kAbortNoSolution: return "abort_no_solution";
  }
  return "unknown";
}

MineResult MineBlock(const ProblemInstance& inst, const TransactionSet& txs,
                     const Hash256& h_prev, DominatingSetSolver& solver,
                     Clock& clock, const MineOptions& options) {
  MineResult result;
  auto bad = [&result](std::string detail) {
    result.outcome = MineOutcome::kAbortBadInstance;
    result.detail = std::move(detail);
    return result;
  };
  if (inst.graph == nullptr) return bad("instance has no graph");
  if (GraphDigest(*inst.graph) != inst.digest) return bad("graph digest mismatch");
  const CommitteeVerdict verdict = inst.Verify();
  if (!verdict.ok) {
    return bad(std::string("committee: ") +
               std::string(CommitteeFailureName(verdict.failure)));
  }
  if (inst.id_g <= options.prev_id_g) return bad("instance id not fresh");
  if (inst.graph->min_degree() < 1) return bad("instance has an isolated vertex");

  const Hash256 h_mr = MerkleRoot(txs);
  const ExtendedGraph eg =
      ExtendedGraph::Extend(inst.graph, h_prev, h_mr, options.lambda);
  result.bound_k = ComputeBound(eg.order(), eg.min_degree());

  auto assemble = [&](const DominatingSet& ds, uint64_t at) {
    Block block;
    block.header.h_prev = h_prev;
    block.header.h_mr = h_mr;
    block.header.id_g = inst.id_g;
    block.header.graph_digest = inst.digest;
    block.header.sigs = inst.sigs;
    block.header.delta_hat = eg.w_spec().delta_hat();
    block.header.ds = ds.vertices;
    block.header.timestamp = at;
    block.body = txs;
    return block;
  };

  std::optional<DominatingSet> best;
  solver.Reset();
  while (clock.Now() < options.deadline) {
    std::optional<DominatingSet> candidate = solver.Next(eg, clock);
    if (!candidate) break;
    ++result.passes;
    if (clock.Now() > options.deadline) break;
    if (!best || candidate->size() < best->size()) {
      best = std::move(candidate);
      result.kept_sizes.push_back(best->size());
      result.found_at = clock.Now();
      if (options.on_improvement &&
          static_cast<double>(best->size()) <= result.bound_k) {
        options.on_improvement(assemble(*best, result.found_at));
      }
    }
  }
  if (!best || static_cast<double>(best->size()) > result.bound_k) {
    result.outcome = MineOutcome::kAbortNoSolution;
    result.detail = best ? "best set exceeds the bound" : "no set before the deadline";
    return result;
  }
  result.block = assemble(*best, result.found_at);
  result.outcome = MineOutcome::kBlock;
  return result;
}

}  // namespace chrisimos
