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
#ifndef CHRISIMOS_MINING_H_
#define CHRISIMOS_MINING_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chrisimos/crypto.h"
#include "chrisimos/graph.h"
#include "chrisimos/ledger.h"
#include "chrisimos/transform.h"

namespace chrisimos {

struct DominatingSet {
  std::vector<VertexId> vertices;  // sorted ascending

  size_t size() const { return vertices.size(); }
  friend bool operator==(const DominatingSet&, const DominatingSet&) = default;
};

bool IsDominating(const Graph& g, std::span<const VertexId> set);
// Checks against G_T through the lazy neighbor queries.
bool IsDominating(const ExtendedGraph& eg, std::span<const VertexId> set);

struct GreedyOptions {
  // Optional per-vertex keys (indexed by id - 1) that break gain ties before
  // the vertex id does. Empty means ties go to the smallest id.
  std::vector<uint64_t> tie_keys;
  // Out: adjacency cells inspected.
  uint64_t* cells = nullptr;
};

// Repeatedly picks the uncovered vertex whose closed neighborhood holds the
// most uncovered vertices. Ties go to the smallest key, then smallest id.
DominatingSet GreedyDominatingSet(const Graph& g,
                                  const GreedyOptions& options = {});
DominatingSet GreedyDominatingSet(const ExtendedGraph& eg,
                                  const GreedyOptions& options = {});

inline constexpr uint32_t kBruteForceLimit = 20;

// Minimum dominating set; among minimum sets the lexicographically smallest.
// Throws Error(kTooLarge) when n > kBruteForceLimit.
DominatingSet BruteMinDominatingSet(const Graph& g);

// Time source for the mining loop. Ticks are opaque; solvers report the
// adjacency work of each pass through Charge.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual uint64_t Now() const = 0;
  virtual void Charge(uint64_t cells) = 0;
};

// Deterministic clock: a pass over c cells costs ceil(c / cells_per_tick).
class LogicalClock : public Clock {
 public:
  explicit LogicalClock(uint64_t cells_per_tick, uint64_t start = 0);
  uint64_t Now() const override { return now_; }
  void Charge(uint64_t cells) override;
  void AdvanceTo(uint64_t t) { now_ = t > now_ ? t : now_; }

 private:
  uint64_t cells_per_tick_;
  uint64_t now_;
};

// Wall clock in microseconds since construction. Charge is a no-op.
class SteadyClock : public Clock {
 public:
  SteadyClock() : start_(std::chrono::steady_clock::now()) {}
  uint64_t Now() const override;
  void Charge(uint64_t) override {}

 private:
  std::chrono::steady_clock::time_point start_;
};

class DominatingSetSolver {
 public:
  virtual ~DominatingSetSolver() = default;
  // Next candidate for the extended graph, or nullopt when the solver has
  // nothing further to try. Work is charged to the clock.
  virtual std::optional<DominatingSet> Next(const ExtendedGraph& eg,
                                            Clock& clock) = 0;
  virtual void Reset() = 0;
};

// One deterministic greedy pass followed by up to 'restarts' passes with
// seeded random tie keys.
class GreedySolver : public DominatingSetSolver {
 public:
  explicit GreedySolver(uint32_t restarts = 0, uint64_t seed = 0)
      : restarts_(restarts), seed_(seed) {}
  std::optional<DominatingSet> Next(const ExtendedGraph& eg,
                                    Clock& clock) override;
  void Reset() override { pass_ = 0; }

 private:
  uint32_t restarts_;
  uint64_t seed_;
  uint32_t pass_ = 0;
};

enum class MineOutcome { kBlock, kAbortBadInstance, kAbortNoSolution };
std::string_view MineOutcomeName(MineOutcome outcome);

struct MineOptions {
  int lambda = kDefaultLambda;
  uint64_t prev_id_g = 0;
  uint64_t deadline = 0;  // in clock ticks
  // Called with each kept improvement, in order; the last one is the result.
  std::function<void(const Block&)> on_improvement;
};

struct MineResult {
  MineOutcome outcome = MineOutcome::kAbortNoSolution;
  std::optional<Block> block;
  std::string detail;
  double bound_k = 0;
  // Sizes of the successive improvements that were kept.
  std::vector<size_t> kept_sizes;
  uint32_t passes = 0;
  uint64_t found_at = 0;
};

// Runs the solver until it is exhausted or the deadline passes, keeping the
// smallest set found. Results of a pass finishing after the deadline are
// dropped.
MineResult MineBlock(const ProblemInstance& inst, const TransactionSet& txs,
                     const Hash256& h_prev, DominatingSetSolver& solver,
                     Clock& clock, const MineOptions& options);

}  // namespace chrisimos

#endif  // CHRISIMOS_MINING_H_
