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
#include "chrisimos/chain_select.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "chrisimos/error.h"
#include "chrisimos/mining.h"
#include "chrisimos/random.h"

namespace chrisimos {
namespace {

TEST(WorkDone, Examples) {
  EXPECT_NEAR(WorkDone(100, 300, 2, 4, 100), 95213.1, 0.1);
  EXPECT_NEAR(WorkDone(100, 300, 2, 4, 120), 79344.3, 0.1);
  EXPECT_NEAR(WorkDone(100, 300, 2, 4, 100) / WorkDone(100, 300, 2, 4, 120), 1.2, 1e-12);
  // With delta 0 the expected bound is exactly 2n, so the factor is 1.
  EXPECT_DOUBLE_EQ(WorkDone(50, 80, 0, 0, 100), (2.0 * 80) * 50);
}

TEST(WorkDone, Monotone) {
  for (uint64_t ds = 10; ds < 200; ++ds) {
    EXPECT_GT(WorkDone(100, 300, 2, 4, ds), WorkDone(100, 300, 2, 4, ds + 1));
  }
  for (uint64_t m = 100; m < 400; m += 7) {
    EXPECT_LT(WorkDone(100, m, 2, 4, 50), WorkDone(100, m + 1, 2, 4, 50));
  }
  for (uint64_t n = 50; n < 400; n += 7) {
    EXPECT_LT(WorkDone(n, 300, 2, 4, 50), WorkDone(n + 1, 300, 2, 4, 50));
  }
}

ChainView Dummy(uint64_t tip, uint32_t f) {
  ChainView c;
  c.checkpoint_depth = f;
  c.blocks.assign(tip + 1, MakeGenesis());
  return c;
}

TEST(Checkpoint, Examples) {
  const ChainView c = Dummy(10, 6);
  EXPECT_TRUE(IsCheckpointed(c, 4));
  EXPECT_FALSE(IsCheckpointed(c, 5));
  EXPECT_TRUE(IsCheckpointed(c, 0));
  EXPECT_FALSE(IsCheckpointed(Dummy(5, 6), 0));
  EXPECT_TRUE(IsCheckpointed(Dummy(6, 6), 0));
  try {
    IsCheckpointed(c, 11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHeightOutOfRange);
  }
}

// Instances 1..N over small BA graphs, and helpers to mine chains on them.
class Chains : public ::testing::Test {
 protected:
  static constexpr uint32_t kF = 6;

  void SetUp() override {
    for (uint64_t id = 1; id <= 40; ++id) {
      book_.emplace(id, ProblemInstance::Create(
                            id,
                            std::make_shared<const Graph>(
                                GenerateGraph(BarabasiAlbert{2}, 60, 100 + id)),
                            keys_, 3));
    }
  }

  Block MineOn(const Block& parent, uint64_t id, const std::string& tag,
               size_t pad = 0) const {
    TransactionSet txs{Transaction::FromString(tag), {}};
    GreedySolver solver;
    LogicalClock clock(10);
    MineOptions opts;
    opts.deadline = 1'000'000;
    const MineResult r =
        MineBlock(book_.at(id), txs, parent.Hash(), solver, clock, opts);
    Block b = *r.block;
    std::vector<VertexId>& ds = b.header.ds;
    for (VertexId v = 1; v <= 120 && pad > 0; ++v) {
      if (!std::binary_search(r.block->header.ds.begin(), r.block->header.ds.end(), v)) {
        ds.push_back(v);
        --pad;
      }
    }
    std::sort(ds.begin(), ds.end());
    return b;
  }

  // Appends one block per id to the prefix.
  std::vector<Block> Extend(std::vector<Block> prefix,
                            const std::vector<uint64_t>& ids,
                            const std::string& tag, size_t pad = 0) const {
    for (uint64_t id : ids) {
      prefix.push_back(MineOn(prefix.back(), id, tag + std::to_string(id), pad));
    }
    return prefix;
  }

  std::vector<uint64_t> Range(uint64_t a, uint64_t b) const {
    std::vector<uint64_t> out;
    for (uint64_t i = a; i <= b; ++i) out.push_back(i);
    return out;
  }

  ChainView View(std::vector<Block> blocks) const {
    return ChainView::Build(std::move(blocks), kF, book_);
  }

  CommitteeKeys keys_ = CommitteeKeys::Generate(4, 3, 77);
  InstanceBook book_;
};

TEST_F(Chains, BuildComputesWork) {
  const ChainView c = View(Extend({MakeGenesis()}, Range(1, 3), "a"));
  ASSERT_EQ(c.work.size(), 4u);
  EXPECT_EQ(c.work[0], 0.0);
  const Block& b = c.blocks[2];
  const Graph& g = *book_.at(2).graph;
  EXPECT_DOUBLE_EQ(c.work[2], WorkDone(g.order(), g.size(), g.min_degree(),
                                       b.header.delta_hat, b.header.ds.size()));
  EXPECT_DOUBLE_EQ(c.SuffixWork(1), c.work[2] + c.work[3]);
}

TEST_F(Chains, HeavierSuffixWins) {
  const auto prefix = Extend({MakeGenesis()}, Range(1, 8), "p");
  const ChainView light = View(Extend(prefix, Range(9, 10), "light", 12));
  const ChainView heavy = View(Extend(prefix, Range(9, 10), "heavy"));
  SelectResult r = SelectChain(light, heavy, book_);
  EXPECT_TRUE(r.adopt_candidate);
  EXPECT_EQ(r.fork_height, 8u);
  EXPECT_GT(r.candidate_work, r.current_work);
  EXPECT_FALSE(r.trace.empty());
  r = SelectChain(heavy, light, book_);
  EXPECT_FALSE(r.adopt_candidate);
}

TEST_F(Chains, LongerButLighterLoses) {
  const auto prefix = Extend({MakeGenesis()}, Range(1, 8), "p");
  const ChainView heavy = View(Extend(prefix, Range(9, 10), "heavy"));
  const ChainView longer = View(Extend(prefix, Range(9, 11), "long", 60));
  const SelectResult r = SelectChain(heavy, longer, book_);
  ASSERT_GT(longer.tip_height(), heavy.tip_height());
  EXPECT_EQ(r.adopt_candidate, r.candidate_work > r.current_work);
}

TEST_F(Chains, ForkBelowCheckpointIsIgnored) {
  // tip 10, f 6: checkpoint at 4; fork at 2.
  const auto prefix = Extend({MakeGenesis()}, Range(1, 2), "p");
  const ChainView current = View(Extend(prefix, Range(3, 10), "c", 20));
  const ChainView candidate = View(Extend(prefix, Range(3, 14), "d"));
  const SelectResult r = SelectChain(current, candidate, book_);
  EXPECT_EQ(r.fork_height, 2u);
  EXPECT_FALSE(r.adopt_candidate);
  EXPECT_NE(r.trace.back().find("rule (iii)"), std::string::npos);
}

TEST_F(Chains, ForkAtCheckpointNeedsFBlocks) {
  const auto prefix = Extend({MakeGenesis()}, Range(1, 4), "p");
  const ChainView current = View(Extend(prefix, Range(5, 10), "c", 20));
  const ChainView short_cand = View(Extend(prefix, Range(5, 9), "s"));
  SelectResult r = SelectChain(current, short_cand, book_);
  EXPECT_EQ(r.fork_height, 4u);
  EXPECT_FALSE(r.adopt_candidate);

  const ChainView full = View(Extend(prefix, Range(5, 10), "s"));
  r = SelectChain(current, full, book_);
  EXPECT_TRUE(r.adopt_candidate);
}

TEST_F(Chains, StaleInstanceIdDiscarded) {
  const auto prefix = Extend({MakeGenesis()}, Range(1, 3), "p");
  const ChainView current = View(Extend(prefix, {4}, "c", 20));
  // Re-mines instance 3 on top of block 3.
  const ChainView cand = View(Extend(prefix, {3, 5}, "x"));
  const SelectResult r = SelectChain(current, cand, book_);
  EXPECT_FALSE(r.adopt_candidate);
  EXPECT_NE(r.trace.back().find("StaleInstanceId"), std::string::npos);
}

TEST_F(Chains, UnknownInstanceOrBadBlockDiscarded) {
  const auto prefix = Extend({MakeGenesis()}, Range(1, 3), "p");
  const ChainView current = View(Extend(prefix, {4}, "c", 20));
  std::vector<Block> blocks = Extend(prefix, {4, 5}, "x");
  blocks[5].header.ds.resize(3);
  ChainView cand = current;
  cand.blocks = blocks;
  cand.work.assign(blocks.size(), 1e12);
  SelectResult r = SelectChain(current, cand, book_);
  EXPECT_FALSE(r.adopt_candidate);
  EXPECT_NE(r.trace.back().find("NotDominating"), std::string::npos);

  blocks = Extend(prefix, {4}, "x");
  blocks.back().header.id_g = 99;
  cand.blocks = blocks;
  r = SelectChain(current, cand, book_);
  EXPECT_FALSE(r.adopt_candidate);
}

TEST_F(Chains, TieUsesSeed) {
  const auto prefix = Extend({MakeGenesis()}, Range(1, 3), "p");
  const Block x = MineOn(prefix.back(), 4, "x");
  const Block y = MineOn(prefix.back(), 4, "y");
  const size_t size = std::max(x.header.ds.size(), y.header.ds.size());
  auto chain = [&](const std::string& tag, const Block& b) {
    std::vector<Block> blocks = prefix;
    blocks.push_back(MineOn(prefix.back(), 4, tag, size - b.header.ds.size()));
    return View(blocks);
  };
  const ChainView a = chain("x", x), b = chain("y", y);
  ASSERT_DOUBLE_EQ(a.SuffixWork(3), b.SuffixWork(3));
  int adopted = 0;
  for (uint64_t seed = 0; seed < 64; ++seed) {
    const SelectResult r1 = SelectChain(a, b, book_, {seed, kDefaultLambda});
    const SelectResult r2 = SelectChain(a, b, book_, {seed, kDefaultLambda});
    EXPECT_TRUE(r1.tie);
    EXPECT_EQ(r1.adopt_candidate, r2.adopt_candidate);
    adopted += r1.adopt_candidate;
  }
  EXPECT_GT(adopted, 10);
  EXPECT_LT(adopted, 54);
}

TEST_F(Chains, NothingNewKeepsCurrent) {
  const ChainView c = View(Extend({MakeGenesis()}, Range(1, 3), "p"));
  ChainView shorter = c;
  shorter.blocks.resize(3);
  shorter.work.resize(3);
  EXPECT_FALSE(SelectChain(c, shorter, book_).adopt_candidate);
  EXPECT_FALSE(SelectChain(c, c, book_).adopt_candidate);
}

TEST_F(Chains, GenesisMustMatch) {
  const ChainView c = View(Extend({MakeGenesis()}, Range(1, 2), "p"));
  ChainView other = c;
  other.blocks[0].header.timestamp = 1;
  try {
    SelectChain(c, other, book_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompatibleGenesis);
  }
}

TEST_F(Chains, NeverRollsBackCheckpoint) {
  Rng rng(9);
  const auto trunk = Extend({MakeGenesis()}, Range(1, 16), "t", 5);
  for (int trial = 0; trial < 30; ++trial) {
    const uint64_t tip = 4 + rng.Below(13);
    const uint64_t fork = rng.Below(tip);
    std::vector<Block> cur(trunk.begin(), trunk.begin() + static_cast<long>(tip) + 1);
    std::vector<Block> prefix(trunk.begin(), trunk.begin() + static_cast<long>(fork) + 1);
    const uint64_t len = 1 + rng.Below(10);
    const auto cand = Extend(prefix, Range(fork + 1, fork + len), "f" + std::to_string(trial));
    const ChainView current = View(cur), candidate = View(cand);
    const SelectResult r = SelectChain(current, candidate, book_, {rng.Next(), kDefaultLambda});
    if (r.adopt_candidate) {
      if (tip >= kF) {
        EXPECT_GE(r.fork_height, tip - kF);
      }
      EXPECT_GE(r.candidate_work, r.current_work);
    }
  }
}

TEST_F(Chains, JsonRoundTrip) {
  const ChainView c = View(Extend({MakeGenesis()}, Range(1, 3), "p"));
  uint32_t f = 0;
  const std::vector<Block> back = ChainBlocksFromJson(ChainToJson(c), &f);
  EXPECT_EQ(back, c.blocks);
  EXPECT_EQ(f, kF);
  nlohmann::json arr = nlohmann::json::array();
  for (const Block& b : c.blocks) arr.push_back(BlockToJson(b));
  EXPECT_EQ(ChainBlocksFromJson(arr), c.blocks);
  EXPECT_THROW(ChainBlocksFromJson(nlohmann::json::object()), Error);
}

}  // namespace
}  // namespace chrisimos
