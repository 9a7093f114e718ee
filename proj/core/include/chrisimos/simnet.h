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
#ifndef CHRISIMOS_SIMNET_H_
#define CHRISIMOS_SIMNET_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "chrisimos/bit_rules.h"
#include "chrisimos/chain_select.h"
#include "chrisimos/graph.h"
#include "chrisimos/ledger.h"
#include "chrisimos/mining.h"
#include "chrisimos/timing_table.h"

namespace chrisimos {

struct MinerConfig {
  uint32_t restarts = 0;
  // Overrides the epoch budget in ticks; 0 means the miner cannot finish.
  std::optional<uint64_t> budget;
};

struct SimConfig {
  uint32_t miners = 3;
  std::vector<MinerConfig> miner_configs;  // missing entries use defaults
  uint64_t delta_net = 20;                 // max message delay, ticks
  uint32_t f = kDefaultCheckpointDepth;
  double l = kDefaultIntervalFactor;
  int lambda = kDefaultLambda;
  uint64_t cells_per_tick = 10;  // reference solver speed
  uint32_t epochs = 5;
  GraphModel model = BarabasiAlbert{2};
  uint32_t n = 200;
  uint32_t committee_size = 4;
  uint32_t threshold = 3;
  uint64_t seed = 1;
};

struct Submission {
  uint32_t miner = 0;
  bool honest = true;
  uint64_t size = 0;
  uint64_t found_at = 0;
  uint64_t arrival = 0;
  std::string verdict;  // as seen by the first honest node
  std::string block_hash;
};

struct EpochReport {
  uint64_t height = 0;
  uint64_t id_g = 0;
  uint64_t start = 0;
  uint64_t t_max = 0;
  std::optional<uint32_t> winner;
  uint64_t winner_size = 0;
  std::string winner_hash;
  uint64_t commit_latency = 0;
  std::vector<Submission> submissions;
  bool agreement = true;
};

struct ForkDecision {
  uint32_t node = 0;
  bool adopted = false;
  std::vector<std::string> trace;
};

struct ForkEvent {
  std::string kind;
  uint64_t fork_height = 0;
  double current_work = 0;
  double candidate_work = 0;
  std::vector<ForkDecision> decisions;
};

struct SimReport {
  std::string scenario;
  uint64_t seed = 0;
  uint32_t miners = 0;
  std::vector<EpochReport> epochs;
  std::vector<ForkEvent> forks;
  std::vector<uint64_t> chain_ids;  // of the first honest node, genesis excluded
  std::vector<std::string> node_tips;
  uint64_t height_conflicts = 0;
  bool all_epochs_committed = true;
  bool outcome_ok = false;
  std::string outcome;

  nlohmann::json ToJson() const;
};

// A block handed to the network by a miner.
struct MinerMessage {
  uint32_t miner = 0;
  bool honest = true;
  Block block;
  uint64_t found_at = 0;
  uint64_t arrival = 0;  // filled by the network unless preset
  bool preset_arrival = false;
};

struct EpochHooks {
  // May rewrite or add messages before delivery.
  std::function<void(const ProblemInstance&, std::vector<MinerMessage>&)>
      tamper;
};

// Adds the smallest ids of 1..n_t missing from ds until |ds| == target.
DominatingSet PadDominatingSet(const DominatingSet& ds, size_t target,
                               uint32_t n_t);

// The n = 100, m = 300, delta = 2 instance used by the fork_work scenario.
Graph ForkWorkGraph();

// Deterministic single-threaded simulator. Every honest miner is also a
// verifying node with its own chain. Each message gets one delay in
// [0, delta_net], shared by all receivers.
class Simulation {
 public:
  explicit Simulation(SimConfig config);

  const SimConfig& config() const { return config_; }
  const CommitteeKeys& committee() const { return committee_; }
  const InstanceBook& instances() const { return instances_; }
  const LookupTable& table() const { return table_; }
  uint32_t nodes() const { return static_cast<uint32_t>(chains_.size()); }
  const std::vector<Block>& chain(uint32_t node) const { return chains_[node]; }
  uint64_t now() const { return now_; }

  // Committee-signed instance with the next id, on a graph from the model.
  ProblemInstance NextInstance();
  ProblemInstance MakeInstance(Graph g);
  // Logical T_max for g from the table.
  uint64_t TmaxTicks(const Graph& g) const;

  // Runs one epoch on every node. The instance is announced first.
  EpochReport RunEpoch(const ProblemInstance& inst, const EpochHooks& hooks = {});

  // Mines a block on top of parent with the given coinbase, without time
  // limits. Throws if the solver fails.
  Block MineOn(const Block& parent, const ProblemInstance& inst,
               const std::string& coinbase, uint32_t restarts = 0,
               uint64_t solver_seed = 0) const;

  // Offers candidate to every node; nodes adopting it replace their chain.
  ForkEvent OfferFork(const std::string& kind,
                      const std::vector<std::vector<Block>>& candidates);

  uint64_t HeightConflicts() const;
  void SetChain(uint32_t node, std::vector<Block> blocks);

 private:
  SimConfig config_;
  CommitteeKeys committee_;
  LookupTable table_;
  InstanceBook instances_;
  std::vector<std::vector<Block>> chains_;
  uint64_t next_id_ = 1;
  uint64_t now_ = 0;
};

inline constexpr std::string_view kScenarioNames[] = {
    "honest", "tie", "forged_instance", "stale_id", "fork_work", "selfish_fork"};

// Throws Error(kUnknownScenario).
SimReport RunScenario(std::string_view name, const SimConfig& config);

}  // namespace chrisimos

#endif  // CHRISIMOS_SIMNET_H_
