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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "chrisimos/chain_select.h"
#include "chrisimos/error.h"
#include "chrisimos/verification.h"

namespace chrisimos {
namespace {

// Winner is the smallest on-time accepted size; equal sizes go to the
// earliest arrival.
void ExpectWinnerRule(const EpochReport& e) {
  std::vector<const Submission*> ok;
  for (const Submission& s : e.submissions) {
    if (s.arrival < e.start + e.t_max && s.verdict != "Reject(Late)" &&
        s.verdict.find("Bad") == std::string::npos &&
        s.verdict.find("NotDominating") == std::string::npos) {
      ok.push_back(&s);
    }
  }
  ASSERT_FALSE(ok.empty());
  const Submission* best = ok.front();
  for (const Submission* s : ok) {
    if (s->size < best->size) best = s;  // ok is in arrival order
  }
  EXPECT_EQ(e.winner_size, best->size);
  EXPECT_EQ(e.winner_hash, best->block_hash);
}

TEST(Simnet, HonestEpochs) {
  SimConfig cfg;
  const SimReport r = RunScenario("honest", cfg);
  EXPECT_TRUE(r.outcome_ok) << r.outcome;
  ASSERT_EQ(r.epochs.size(), 5u);
  ASSERT_EQ(r.chain_ids.size(), 5u);
  for (size_t i = 0; i < r.chain_ids.size(); ++i) EXPECT_EQ(r.chain_ids[i], i + 1);
  EXPECT_TRUE(r.all_epochs_committed);
  EXPECT_EQ(r.height_conflicts, 0u);
  for (const EpochReport& e : r.epochs) {
    EXPECT_TRUE(e.agreement);
    EXPECT_TRUE(e.winner.has_value());
    EXPECT_EQ(e.submissions.size() >= 3, true);
    ExpectWinnerRule(e);
    EXPECT_LE(e.commit_latency, e.t_max);
  }
  for (size_t i = 1; i < r.node_tips.size(); ++i) EXPECT_EQ(r.node_tips[i], r.node_tips[0]);
}

TEST(Simnet, EveryScenarioPasses) {
  for (std::string_view name : kScenarioNames) {
    const SimReport r = RunScenario(name, SimConfig{});
    EXPECT_TRUE(r.outcome_ok) << name << ": " << r.outcome;
    EXPECT_EQ(r.scenario, name);
    EXPECT_EQ(r.height_conflicts, 0u) << name;
  }
}

TEST(Simnet, TieGoesToEarliest) {
  const SimReport r = RunScenario("tie", SimConfig{});
  ASSERT_TRUE(r.outcome_ok) << r.outcome;
  for (const EpochReport& e : r.epochs) {
    ASSERT_GE(e.submissions.size(), 2u);
    const Submission& first = e.submissions.front();
    EXPECT_EQ(first.verdict, "Accept");
    EXPECT_EQ(e.winner_hash, first.block_hash);
    for (size_t i = 1; i < e.submissions.size(); ++i) {
      EXPECT_EQ(e.submissions[i].size, first.size);
      EXPECT_EQ(e.submissions[i].verdict, "Reject(NotBetter)");
    }
  }
}

TEST(Simnet, ForgedInstanceRejected) {
  const SimReport r = RunScenario("forged_instance", SimConfig{});
  ASSERT_TRUE(r.outcome_ok) << r.outcome;
  for (const EpochReport& e : r.epochs) {
    for (const Submission& s : e.submissions) {
      if (!s.honest) {
        EXPECT_TRUE(s.verdict == "Reject(BadSignature)" ||
                    s.verdict == "Reject(BadInstanceDigest)")
            << s.verdict;
      }
    }
    EXPECT_TRUE(e.winner.has_value());
  }
  ASSERT_FALSE(r.forks.empty());
  for (const ForkEvent& f : r.forks) {
    for (const ForkDecision& d : f.decisions) EXPECT_FALSE(d.adopted);
  }
}

TEST(Simnet, StaleIdDiscarded) {
  const SimReport r = RunScenario("stale_id", SimConfig{});
  ASSERT_TRUE(r.outcome_ok) << r.outcome;
  ASSERT_FALSE(r.forks.empty());
  for (const ForkDecision& d : r.forks.back().decisions) {
    EXPECT_FALSE(d.adopted);
    bool named = false;
    for (const std::string& line : d.trace) {
      named = named || line.find("StaleInstanceId") != std::string::npos;
    }
    EXPECT_TRUE(named);
  }
}

TEST(Simnet, ForkWorkPicksHeavierSuffix) {
  const SimReport r = RunScenario("fork_work", SimConfig{});
  ASSERT_TRUE(r.outcome_ok) << r.outcome;
  ASSERT_EQ(r.forks.size(), 1u);
  const ForkEvent& f = r.forks[0];
  const double heavy = WorkDone(100, 300, 2, 4, 100);
  const double light = WorkDone(100, 300, 2, 4, 120);
  for (const ForkDecision& d : f.decisions) {
    // Even nodes held the light side.
    EXPECT_EQ(d.adopted, d.node % 2 == 0) << d.node;
  }
  EXPECT_NEAR(std::max(f.current_work, f.candidate_work), heavy, 1e-6);
  EXPECT_NEAR(std::min(f.current_work, f.candidate_work), light, 1e-6);
  for (size_t i = 1; i < r.node_tips.size(); ++i) EXPECT_EQ(r.node_tips[i], r.node_tips[0]);
}

TEST(Simnet, SelfishForkNeverAdopted) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    const SimReport r = RunScenario("selfish_fork", cfg);
    ASSERT_TRUE(r.outcome_ok) << r.outcome;
    for (const ForkEvent& f : r.forks) {
      for (const ForkDecision& d : f.decisions) EXPECT_FALSE(d.adopted);
    }
  }
}

TEST(Simnet, UnknownScenario) {
  try {
    RunScenario("nope", SimConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownScenario);
  }
}

TEST(Simnet, Deterministic) {
  for (std::string_view name : kScenarioNames) {
    SimConfig cfg;
    cfg.seed = 42;
    EXPECT_EQ(RunScenario(name, cfg).ToJson().dump(), RunScenario(name, cfg).ToJson().dump())
        << name;
  }
  SimConfig a, b;
  b.seed = 2;
  EXPECT_NE(RunScenario("honest", a).ToJson().dump(), RunScenario("honest", b).ToJson().dump());
}

TEST(Simnet, MinerWithoutBudgetDoesNotBlockEpoch) {
  SimConfig cfg;
  cfg.miner_configs = {MinerConfig{0, 0}};
  Simulation sim(cfg);
  const EpochReport e = sim.RunEpoch(sim.NextInstance());
  EXPECT_TRUE(e.winner.has_value());
  EXPECT_NE(*e.winner, 0u);
  for (const Submission& s : e.submissions) EXPECT_NE(s.miner, 0u);
  EXPECT_TRUE(e.agreement);
}

TEST(Simnet, NoMinerFinishesMeansNoBlock) {
  SimConfig cfg;
  cfg.miners = 2;
  cfg.miner_configs = {MinerConfig{0, 0}, MinerConfig{0, 0}};
  Simulation sim(cfg);
  const EpochReport e = sim.RunEpoch(sim.NextInstance());
  EXPECT_FALSE(e.winner.has_value());
  EXPECT_TRUE(e.submissions.empty());
  EXPECT_EQ(sim.chain(0).size(), 1u);
}

TEST(Simnet, LateBlockRejectedEverywhere) {
  Simulation sim(SimConfig{});
  const ProblemInstance inst = sim.NextInstance();
  const uint64_t deadline = sim.now() + sim.TmaxTicks(*inst.graph);
  // An adversary with a much better set that shows up at the deadline.
  const Block late = sim.MineOn(sim.chain(0).back(), inst, "late adversary", 8, 3);
  EpochHooks hooks;
  hooks.tamper = [&](const ProblemInstance&, std::vector<MinerMessage>& msgs) {
    Block b = late;
    b.header.ds.resize(b.header.ds.size());
    msgs.push_back({99, false, b, deadline, deadline, true});
  };
  const EpochReport e = sim.RunEpoch(inst, hooks);
  bool seen = false;
  for (const Submission& s : e.submissions) {
    if (s.miner == 99) {
      EXPECT_EQ(s.verdict, "Reject(Late)");
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
  for (uint32_t node = 0; node < sim.nodes(); ++node) {
    EXPECT_NE(sim.chain(node).back().Hash(), late.Hash());
    EXPECT_EQ(sim.chain(node).back().Hash(), sim.chain(0).back().Hash());
  }
}

TEST(Simnet, SafetyAcrossSeeds) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.miners = 4;
    cfg.epochs = 6;
    const SimReport r = RunScenario("honest", cfg);
    EXPECT_TRUE(r.outcome_ok);
    EXPECT_TRUE(r.all_epochs_committed);
    EXPECT_EQ(r.height_conflicts, 0u);
  }
}

TEST(Simnet, ForkWorkGraphShape) {
  const Graph g = ForkWorkGraph();
  EXPECT_EQ(g.order(), 100u);
  EXPECT_EQ(g.size(), 300u);
  EXPECT_EQ(g.min_degree(), 2u);
}

TEST(Simnet, PadKeepsSetAndSorts) {
  const DominatingSet ds{{3, 7}};
  const DominatingSet p = PadDominatingSet(ds, 5, 10);
  EXPECT_EQ(p.size(), 5u);
  EXPECT_TRUE(std::is_sorted(p.vertices.begin(), p.vertices.end()));
  EXPECT_TRUE(std::binary_search(p.vertices.begin(), p.vertices.end(), 3u));
  EXPECT_TRUE(std::binary_search(p.vertices.begin(), p.vertices.end(), 7u));
  EXPECT_EQ(PadDominatingSet(ds, 1, 10), ds);
}

}  // namespace
}  // namespace chrisimos
