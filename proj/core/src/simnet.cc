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
#include "chrisimos/simnet.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <utility>

#include "chrisimos/error.h"
#include "chrisimos/random.h"
#include "chrisimos/transform.h"
#include "chrisimos/verification.h"

namespace chrisimos {
namespace {

using nlohmann::json;

// Seed streams.
constexpr uint64_t kCommitteeStream = 0xc0;
constexpr uint64_t kTableStream = 0x7ab;
constexpr uint64_t kGraphStream = 0x6a0;
constexpr uint64_t kNetworkStream = 0xd31a;
constexpr uint64_t kSolverStream = 0x501;
constexpr uint64_t kRogueStream = 0xbad;
constexpr uint64_t kTieStream = 0x71e;

Hash256 HashFromRng(Rng& rng) {
  Hash256 h{};
  for (size_t i = 0; i < h.size(); i += 8) {
    const uint64_t x = rng.Next();
    for (size_t b = 0; b < 8; ++b) h[i + b] = static_cast<uint8_t>(x >> (8 * b));
  }
  return h;
}

std::string VerdictText(const VerifyResult& r) {
  if (r.accepted) return "Accept";
  return "Reject(" + std::string(RejectReasonName(r.reason)) + ")";
}

TransactionSet CoinbaseOnly(const std::string& payload) {
  TransactionSet txs;
  txs.coinbase = Transaction::FromString(payload);
  return txs;
}

}  // namespace

DominatingSet PadDominatingSet(const DominatingSet& ds, size_t target,
                               uint32_t n_t) {
  if (target > n_t) {
    throw Error(ErrorCode::kInvalidArgument, "pad target exceeds vertex count");
  }
  DominatingSet out = ds;
  std::vector<char> member(n_t + 1, 0);
  for (VertexId v : ds.vertices) member[v] = 1;
  for (VertexId v = 1; v <= n_t && out.size() < target; ++v) {
    if (!member[v]) out.vertices.push_back(v);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

Graph ForkWorkGraph() {
  std::vector<Edge> edges;
  auto add = [&edges](VertexId a, VertexId b) {
    edges.push_back({std::min(a, b), std::max(a, b)});
  };
  for (VertexId i = 1; i <= 100; ++i) add(i, i % 100 + 1);
  for (VertexId i = 1; i <= 90; ++i) {
    add(i, (i + 1) % 90 + 1);  // offset 2 on 1..90
    add(i, (i + 2) % 90 + 1);  // offset 3 on 1..90
  }
  for (VertexId i = 1; i <= 20; ++i) add(i, i + 4);
  uint64_t duplicates = 0;
  Graph g = Graph::FromEdges(100, edges, &duplicates);
  if (duplicates != 0 || g.size() != 300 || g.min_degree() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "fork_work instance is malformed");
  }
  return g;
}

Simulation::Simulation(SimConfig config) : config_(std::move(config)) {
  if (config_.miners == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one miner");
  }
  if (config_.cells_per_tick == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cells_per_tick must be positive");
  }
  committee_ = CommitteeKeys::Generate(config_.committee_size, config_.threshold,
                                       MixSeed(config_.seed, kCommitteeStream));
  chains_.assign(config_.miners, {MakeGenesis()});

  // One reference run priced in adjacency cells stands in for the measured
  // lookup table.
  const Graph ref = GenerateGraph(config_.model, config_.n,
                                  MixSeed(config_.seed, kTableStream));
  Rng rng(MixSeed(config_.seed, kTableStream + 1));
  const Hash256 h_prev = HashFromRng(rng);
  const Hash256 h_mr = HashFromRng(rng);
  const ExtendedGraph eg = ExtendedGraph::Extend(
      std::make_shared<const Graph>(ref), h_prev, h_mr, config_.lambda);
  uint64_t gen_cells = 0;
  GreedyOptions options;
  options.cells = &gen_cells;
  const DominatingSet ds = GreedyDominatingSet(eg, options);
  uint64_t verify_cells = 0;
  for (VertexId v : ds.vertices) {
    verify_cells += eg.ForEachNeighbor(v, [](VertexId) {});
  }
  table_.hardware_tag = "logical";
  table_.entries.push_back(
      {ref.order(), ref.size(), ref.min_degree(),
       static_cast<double>(gen_cells + verify_cells) /
           static_cast<double>(config_.cells_per_tick)});
}

ProblemInstance Simulation::MakeInstance(Graph g) {
  ProblemInstance inst =
      ProblemInstance::Create(next_id_++, std::make_shared<const Graph>(std::move(g)),
                              committee_, config_.threshold);
  instances_[inst.id_g] = inst;
  return inst;
}

ProblemInstance Simulation::NextInstance() {
  return MakeInstance(GenerateGraph(config_.model, config_.n,
                                    MixSeed(config_.seed, kGraphStream + next_id_)));
}

uint64_t Simulation::TmaxTicks(const Graph& g) const {
  return static_cast<uint64_t>(std::ceil(
      EstimateTmax(table_, g.order(), g.size(), g.min_degree(), config_.l)));
}

EpochReport Simulation::RunEpoch(const ProblemInstance& inst,
                                 const EpochHooks& hooks) {
  if (inst.Verify().ok && inst.committee == committee_.committee) {
    instances_[inst.id_g] = inst;
  }
  EpochReport report;
  report.id_g = inst.id_g;
  report.start = now_;
  report.t_max = TmaxTicks(*inst.graph);
  report.height = chains_[0].size();
  const uint64_t deadline = now_ + report.t_max;

  std::vector<MinerMessage> messages;
  for (uint32_t i = 0; i < config_.miners; ++i) {
    const MinerConfig mc = i < config_.miner_configs.size()
                               ? config_.miner_configs[i]
                               : MinerConfig{};
    const Block& parent = chains_[i].back();
    const TransactionSet txs = CoinbaseOnly(
        "coinbase miner-" + std::to_string(i) + " id-" + std::to_string(inst.id_g));
    LogicalClock clock(config_.cells_per_tick, now_);
    GreedySolver solver(mc.restarts,
                        MixSeed(config_.seed, kSolverStream + 131 * i + inst.id_g));
    MineOptions options;
    options.lambda = config_.lambda;
    options.prev_id_g = parent.header.id_g;
    options.deadline = mc.budget ? now_ + *mc.budget : deadline;
    options.on_improvement = [&messages, i](const Block& b) {
      messages.push_back({i, true, b, b.header.timestamp, 0, false});
    };
    MineBlock(inst, txs, parent.Hash(), solver, clock, options);
  }
  if (hooks.tamper) hooks.tamper(inst, messages);

  Rng net(MixSeed(config_.seed, kNetworkStream + inst.id_g));
  for (MinerMessage& m : messages) {
    const uint64_t delay = net.Below(config_.delta_net + 1);
    if (!m.preset_arrival) m.arrival = m.found_at + delay;
  }
  std::vector<size_t> order(messages.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return messages[a].arrival < messages[b].arrival;
  });

  std::vector<std::optional<Block>> committed(chains_.size());
  for (uint32_t node = 0; node < chains_.size(); ++node) {
    EpochVerifierState state = EpochVerifierState::Start(*inst.graph, deadline);
    VerifyContext ctx;
    ctx.h_prev = chains_[node].back().Hash();
    ctx.prev_id_g = chains_[node].back().header.id_g;
    ctx.lambda = config_.lambda;
    for (size_t idx : order) {
      const MinerMessage& m = messages[idx];
      ctx.now = m.arrival;
      const VerifyResult r = VerifyBlock(m.block, inst, ctx, state);
      if (node == 0) {
        report.submissions.push_back({m.miner, m.honest, m.block.header.ds.size(),
                                      m.found_at, m.arrival, VerdictText(r),
                                      ToHex(m.block.Hash())});
      }
    }
    committed[node] = FinalizeEpoch(state);
  }

  for (uint32_t node = 0; node < chains_.size(); ++node) {
    const bool same =
        committed[node].has_value() == committed[0].has_value() &&
        (!committed[0] || committed[node]->Hash() == committed[0]->Hash());
    report.agreement = report.agreement && same;
    if (committed[node]) chains_[node].push_back(*committed[node]);
  }
  if (committed[0]) {
    report.winner_hash = ToHex(committed[0]->Hash());
    report.winner_size = committed[0]->header.ds.size();
    for (size_t idx : order) {
      if (ToHex(messages[idx].block.Hash()) == report.winner_hash) {
        report.winner = messages[idx].miner;
        report.commit_latency = messages[idx].arrival - report.start;
        break;
      }
    }
  }
  now_ = deadline;
  return report;
}

Block Simulation::MineOn(const Block& parent, const ProblemInstance& inst,
                         const std::string& coinbase, uint32_t restarts,
                         uint64_t solver_seed) const {
  LogicalClock clock(config_.cells_per_tick, now_);
  GreedySolver solver(restarts, solver_seed);
  MineOptions options;
  options.lambda = config_.lambda;
  options.deadline = std::numeric_limits<uint64_t>::max();
  const MineResult r =
      MineBlock(inst, CoinbaseOnly(coinbase), parent.Hash(), solver, clock, options);
  if (!r.block) {
    throw Error(ErrorCode::kInvalidArgument,
                "mining failed: " + std::string(MineOutcomeName(r.outcome)) +
                    " " + r.detail);
  }
  return *r.block;
}

ForkEvent Simulation::OfferFork(const std::string& kind,
                                const std::vector<std::vector<Block>>& candidates) {
  ForkEvent event;
  event.kind = kind;
  SelectOptions options;
  options.lambda = config_.lambda;
  options.tie_seed = MixSeed(config_.seed, kTieStream + now_);
  for (uint32_t node = 0; node < chains_.size(); ++node) {
    const auto& blocks = candidates[candidates.size() == 1 ? 0 : node];
    const ChainView current = ChainView::Build(chains_[node], config_.f, instances_);
    const ChainView candidate = ChainView::Build(blocks, config_.f, instances_);
    SelectResult r = SelectChain(current, candidate, instances_, options);
    if (node == 0) {
      event.fork_height = r.fork_height;
      event.current_work = r.current_work;
      event.candidate_work = r.candidate_work;
    }
    event.decisions.push_back({node, r.adopt_candidate, std::move(r.trace)});
    if (r.adopt_candidate) chains_[node] = blocks;
  }
  return event;
}

uint64_t Simulation::HeightConflicts() const {
  size_t longest = 0;
  for (const auto& c : chains_) longest = std::max(longest, c.size());
  uint64_t conflicts = 0;
  for (size_t h = 0; h < longest; ++h) {
    std::optional<Hash256> seen;
    for (const auto& c : chains_) {
      if (h >= c.size()) continue;
      const Hash256 hash = c[h].Hash();
      if (!seen) {
        seen = hash;
      } else if (*seen != hash) {
        ++conflicts;
        break;
      }
    }
  }
  return conflicts;
}

void Simulation::SetChain(uint32_t node, std::vector<Block> blocks) {
  chains_.at(node) = std::move(blocks);
}

json SimReport::ToJson() const {
  json epoch_list = json::array();
  for (const EpochReport& e : epochs) {
    json subs = json::array();
    for (const Submission& s : e.submissions) {
      subs.push_back({{"miner", s.miner},
                      {"honest", s.honest},
                      {"size", s.size},
                      {"found_at", s.found_at},
                      {"arrival", s.arrival},
                      {"verdict", s.verdict},
                      {"block", s.block_hash}});
    }
    epoch_list.push_back({{"height", e.height},
                          {"id_g", e.id_g},
                          {"start", e.start},
                          {"t_max", e.t_max},
                          {"winner", e.winner ? json(*e.winner) : json(nullptr)},
                          {"winner_size", e.winner_size},
                          {"winner_block", e.winner_hash},
                          {"commit_latency", e.commit_latency},
                          {"agreement", e.agreement},
                          {"submissions", subs}});
  }
  json fork_list = json::array();
  for (const ForkEvent& f : forks) {
    json decisions = json::array();
    for (const ForkDecision& d : f.decisions) {
      decisions.push_back(
          {{"node", d.node}, {"adopted", d.adopted}, {"trace", d.trace}});
    }
    fork_list.push_back({{"kind", f.kind},
                         {"fork_height", f.fork_height},
                         {"current_work", f.current_work},
                         {"candidate_work", f.candidate_work},
                         {"decisions", decisions}});
  }
  return {{"scenario", scenario},
          {"seed", seed},
          {"miners", miners},
          {"epochs", epoch_list},
          {"forks", fork_list},
          {"chain", {{"ids", chain_ids}, {"node_tips", node_tips}}},
          {"height_conflicts", height_conflicts},
          {"all_epochs_committed", all_epochs_committed},
          {"outcome_ok", outcome_ok},
          {"outcome", outcome}};
}

namespace {

void RunHonestEpochs(Simulation& sim, SimReport& report, uint32_t epochs,
                     const EpochHooks& hooks = {}) {
  for (uint32_t e = 0; e < epochs; ++e) {
    EpochReport er = sim.RunEpoch(sim.NextInstance(), hooks);
    report.all_epochs_committed = report.all_epochs_committed && er.winner;
    report.epochs.push_back(std::move(er));
  }
}

bool IdsIncreasing(const std::vector<Block>& chain) {
  for (size_t h = 1; h < chain.size(); ++h) {
    if (chain[h].header.id_g <= chain[h - 1].header.id_g) return false;
  }
  return true;
}

bool NobodyAdopted(const ForkEvent& f) {
  return std::none_of(f.decisions.begin(), f.decisions.end(),
                      [](const ForkDecision& d) { return d.adopted; });
}

std::vector<Block> Prefix(const std::vector<Block>& chain, size_t height) {
  return {chain.begin(), chain.begin() + static_cast<ptrdiff_t>(height + 1)};
}

void Finish(const Simulation& sim, SimReport& report) {
  for (size_t h = 1; h < sim.chain(0).size(); ++h) {
    report.chain_ids.push_back(sim.chain(0)[h].header.id_g);
  }
  for (uint32_t node = 0; node < sim.nodes(); ++node) {
    report.node_tips.push_back(ToHex(sim.chain(node).back().Hash()));
  }
  report.height_conflicts = sim.HeightConflicts();
}

}  // namespace

SimReport RunScenario(std::string_view name, const SimConfig& config) {
  if (std::find(std::begin(kScenarioNames), std::end(kScenarioNames), name) ==
      std::end(kScenarioNames)) {
    throw Error(ErrorCode::kUnknownScenario,
                "unknown scenario '" + std::string(name) + "'");
  }
  Simulation sim(config);
  SimReport report;
  report.scenario = std::string(name);
  report.seed = config.seed;
  report.miners = config.miners;
  const uint32_t n_nodes = sim.nodes();

  if (name == "honest") {
    RunHonestEpochs(sim, report, config.epochs);
    Finish(sim, report);
    const bool ids_ok = IdsIncreasing(sim.chain(0));
    report.outcome_ok = report.all_epochs_committed && ids_ok &&
                        report.height_conflicts == 0 &&
                        report.chain_ids.size() == config.epochs;
    report.outcome = report.outcome_ok ? "every epoch committed on every node"
                                       : "missing commits or conflicts";
    return report;
  }

  if (name == "tie") {
    EpochHooks hooks;
    hooks.tamper = [](const ProblemInstance& inst,
                      std::vector<MinerMessage>& messages) {
      size_t target = 0;
      for (const auto& m : messages) {
        target = std::max(target, m.block.header.ds.size());
      }
      for (auto& m : messages) {
        m.block.header.ds =
            PadDominatingSet({m.block.header.ds}, target, 2 * inst.graph->order())
                .vertices;
      }
    };
    RunHonestEpochs(sim, report, config.epochs, hooks);
    Finish(sim, report);
    bool earliest_wins = true;
    for (const EpochReport& e : report.epochs) {
      if (e.submissions.empty() || !e.winner) {
        earliest_wins = false;
        continue;
      }
      earliest_wins = earliest_wins && e.submissions.front().miner == *e.winner &&
                      e.submissions.front().verdict == "Accept";
      for (size_t i = 1; i < e.submissions.size(); ++i) {
        earliest_wins = earliest_wins &&
                        e.submissions[i].verdict == "Reject(NotBetter)";
      }
    }
    report.outcome_ok = earliest_wins && report.all_epochs_committed &&
                        report.height_conflicts == 0;
    report.outcome = report.outcome_ok ? "earliest equal-size block won everywhere"
                                       : "tie resolution diverged";
    return report;
  }

  if (name == "forged_instance") {
    const CommitteeKeys rogue = CommitteeKeys::Generate(
        config.committee_size, config.threshold, MixSeed(config.seed, kRogueStream));
    uint32_t epoch = 0;
    EpochHooks hooks;
    hooks.tamper = [&](const ProblemInstance& inst,
                       std::vector<MinerMessage>& messages) {
      const ProblemInstance forged = ProblemInstance::Create(
          inst.id_g,
          std::make_shared<const Graph>(GenerateGraph(
              config.model, config.n, MixSeed(config.seed, kRogueStream + ++epoch))),
          rogue, config.threshold);
      Block b = sim.MineOn(sim.chain(0).back(), forged, "coinbase adversary");
      // Delivered first so it cannot lose on timing.
      messages.push_back({config.miners, false, b, sim.now(), sim.now(), true});
    };
    RunHonestEpochs(sim, report, config.epochs, hooks);

    // A chain extended by a block on an instance the committee never signed.
    const ProblemInstance orphan = ProblemInstance::Create(
        sim.instances().rbegin()->first + 1,
        std::make_shared<const Graph>(GenerateGraph(
            config.model, config.n, MixSeed(config.seed, kRogueStream))),
        rogue, config.threshold);
    std::vector<Block> candidate = sim.chain(0);
    candidate.push_back(sim.MineOn(candidate.back(), orphan, "coinbase adversary"));
    report.forks.push_back(sim.OfferFork("forged_instance", {candidate}));
    Finish(sim, report);

    bool all_rejected = true;
    for (const EpochReport& e : report.epochs) {
      for (const Submission& s : e.submissions) {
        if (!s.honest) all_rejected = all_rejected && s.verdict != "Accept";
      }
    }
    report.outcome_ok = all_rejected && NobodyAdopted(report.forks.back()) &&
                        report.all_epochs_committed && report.height_conflicts == 0;
    report.outcome = report.outcome_ok ? "forged instances rejected by every node"
                                       : "a forged block was accepted";
    return report;
  }

  if (name == "stale_id") {
    RunHonestEpochs(sim, report, std::max<uint32_t>(config.epochs, 2));
    const std::vector<Block>& honest = sim.chain(0);
    const size_t tip = honest.size() - 1;
    // Re-mine the parent's instance on top of the parent, then keep going so
    // the candidate is the longer chain.
    std::vector<Block> candidate = Prefix(honest, tip - 1);
    const auto& reused = sim.instances().at(honest[tip - 1].header.id_g);
    candidate.push_back(sim.MineOn(candidate.back(), reused, "coinbase adversary"));
    const auto& next = sim.instances().at(honest[tip].header.id_g);
    candidate.push_back(sim.MineOn(candidate.back(), next, "coinbase adversary 2"));
    const std::string honest_tip = ToHex(honest.back().Hash());
    report.forks.push_back(sim.OfferFork("stale_id", {candidate}));
    Finish(sim, report);
    bool kept = NobodyAdopted(report.forks.back());
    for (const auto& t : report.node_tips) kept = kept && t == honest_tip;
    report.outcome_ok = kept && report.height_conflicts == 0;
    report.outcome = report.outcome_ok ? "chain reusing an instance id discarded"
                                       : "stale chain adopted";
    return report;
  }

  if (name == "fork_work") {
    RunHonestEpochs(sim, report, std::min<uint32_t>(config.epochs, 2));
    const ProblemInstance inst = sim.MakeInstance(ForkWorkGraph());
    const std::vector<Block> base = sim.chain(0);
    const uint32_t n_t = 2 * inst.graph->order();
    auto padded = [&](const std::string& coinbase, size_t size) {
      Block b = sim.MineOn(base.back(), inst, coinbase);
      if (b.header.ds.size() > size) {
        throw Error(ErrorCode::kInvalidArgument,
                    "greedy set larger than the scripted size");
      }
      b.header.ds = PadDominatingSet({b.header.ds}, size, n_t).vertices;
      return b;
    };
    const Block light = padded("coinbase fork-a", 120);
    const Block heavy = padded("coinbase fork-b", 100);
    std::vector<Block> light_chain = base, heavy_chain = base;
    light_chain.push_back(light);
    heavy_chain.push_back(heavy);
    std::vector<std::vector<Block>> candidates;
    for (uint32_t node = 0; node < n_nodes; ++node) {
      const bool even = node % 2 == 0;
      sim.SetChain(node, even ? light_chain : heavy_chain);
      candidates.push_back(even ? heavy_chain : light_chain);
    }
    report.forks.push_back(sim.OfferFork("fork_work", candidates));
    Finish(sim, report);
    bool converged = true;
    for (const auto& t : report.node_tips) {
      converged = converged && t == ToHex(heavy.Hash());
    }
    report.outcome_ok = converged && report.height_conflicts == 0;
    report.outcome = report.outcome_ok ? "heavier suffix adopted by every node"
                                       : "nodes did not converge on the heavier suffix";
    return report;
  }

  // selfish_fork
  const uint32_t epochs = std::max<uint32_t>(config.epochs, config.f + 3);
  RunHonestEpochs(sim, report, epochs);
  const std::vector<Block> honest = sim.chain(0);
  const size_t tip = honest.size() - 1;
  const size_t fork = tip - config.f - 2;
  std::vector<Block> candidate = Prefix(honest, fork);
  for (size_t h = fork + 1; h <= tip; ++h) {
    const auto& inst = sim.instances().at(honest[h].header.id_g);
    candidate.push_back(sim.MineOn(candidate.back(), inst,
                                   "coinbase selfish " + std::to_string(h), 4,
                                   MixSeed(config.seed, h)));
  }
  const std::string honest_tip = ToHex(honest.back().Hash());
  report.forks.push_back(sim.OfferFork("selfish_fork", {candidate}));
  Finish(sim, report);
  bool kept = NobodyAdopted(report.forks.back());
  for (const auto& t : report.node_tips) kept = kept && t == honest_tip;
  report.outcome_ok = kept && report.all_epochs_committed &&
                      report.height_conflicts == 0;
  report.outcome = report.outcome_ok ? "private fork below the checkpoint ignored"
                                     : "private fork adopted";
  return report;
}

}  // namespace chrisimos
