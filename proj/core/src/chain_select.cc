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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "chrisimos/error.h"
#include "chrisimos/random.h"
#include "chrisimos/verification.h"

namespace chrisimos {
namespace {

const ProblemInstance* FindInstance(const InstanceBook& instances,
                                    uint64_t id) {
  const auto it = instances.find(id);
  return it == instances.end() ? nullptr : &it->second;
}

std::string Fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

double WorkDone(uint64_t n, uint64_t m, uint32_t delta, uint32_t delta_hat,
                uint64_t ds_size) {
  if (ds_size == 0) {
    throw Error(ErrorCode::kEmptySet, "work of an empty dominating set");
  }
  const double nd = static_cast<double>(n);
  const double edges_t = 2.0 * static_cast<double>(m) +
                         static_cast<double>(delta_hat) * (nd - 1.0) / 2.0;
  const double d = 1.5 * static_cast<double>(delta);
  const double expected_ds = 2.0 * nd * (1.0 + std::log1p(d)) / (1.0 + d);
  return edges_t * nd * expected_ds / static_cast<double>(ds_size);
}

double WorkDone(const Block& block, const ProblemInstance& inst) {
  if (block.header.id_g == 0) return 0.0;
  const Graph& g = *inst.graph;
  return WorkDone(g.order(), g.size(), g.min_degree(), block.header.delta_hat,
                  block.header.ds.size());
}

ChainView ChainView::Build(std::vector<Block> blocks, uint32_t f,
                           const InstanceBook& instances) {
  if (blocks.empty()) {
    throw Error(ErrorCode::kIncompatibleGenesis, "chain has no genesis");
  }
  ChainView chain;
  chain.blocks = std::move(blocks);
  chain.checkpoint_depth = f;
  chain.work.reserve(chain.blocks.size());
  for (const Block& b : chain.blocks) {
    if (b.header.id_g == 0) {
      chain.work.push_back(0.0);
      continue;
    }
    const ProblemInstance* inst = FindInstance(instances, b.header.id_g);
    // Unknown instances carry no work; rule (i) discards such chains anyway.
    chain.work.push_back(inst == nullptr ? 0.0 : WorkDone(b, *inst));
  }
  return chain;
}

double ChainView::SuffixWork(uint64_t after_height) const {
  double total = 0;
  for (uint64_t h = after_height + 1; h < work.size(); ++h) total += work[h];
  return total;
}

bool IsCheckpointed(const ChainView& chain, uint64_t height) {
  if (height > chain.tip_height()) {
    throw Error(ErrorCode::kHeightOutOfRange,
                "height " + std::to_string(height) + " above tip " +
                    std::to_string(chain.tip_height()));
  }
  return chain.tip_height() - height >= chain.checkpoint_depth;
}

SelectResult SelectChain(const ChainView& current, const ChainView& candidate,
                         const InstanceBook& instances,
                         const SelectOptions& options) {
  if (current.blocks.front().Hash() != candidate.blocks.front().Hash()) {
    throw Error(ErrorCode::kIncompatibleGenesis, "genesis blocks differ");
  }
  SelectResult r;
  auto& trace = r.trace;

  uint64_t fork = 0;
  const uint64_t common =
      std::min(current.tip_height(), candidate.tip_height());
  while (fork < common &&
         current.blocks[fork + 1].Hash() == candidate.blocks[fork + 1].Hash()) {
    ++fork;
  }
  r.fork_height = fork;
  trace.push_back("fork point at height " + std::to_string(fork));
  if (fork == candidate.tip_height()) {
    trace.push_back("candidate adds nothing beyond the fork: keep current");
    return r;
  }

  // Rule (i): every new block must be valid on top of its parent.
  for (uint64_t h = fork + 1; h <= candidate.tip_height(); ++h) {
    const Block& b = candidate.blocks[h];
    const Block& parent = candidate.blocks[h - 1];
    const ProblemInstance* inst = FindInstance(instances, b.header.id_g);
    if (inst == nullptr) {
      trace.push_back("rule (i): block " + std::to_string(h) +
                      " names unknown instance " +
                      std::to_string(b.header.id_g) + ": discard candidate");
      return r;
    }
    VerifyResult v =
        CheckBlockStatic(b, *inst, parent.Hash(), parent.header.id_g);
    if (v.accepted) v = CheckCoverage(b, *inst, options.lambda);
    if (!v.accepted) {
      trace.push_back("rule (i): block " + std::to_string(h) + " rejected (" +
                      std::string(RejectReasonName(v.reason)) + ": " +
                      v.detail + "): discard candidate");
      return r;
    }
  }

  // Rule (iii): the checkpointed prefix of the current chain is final.
  const uint32_t f = current.checkpoint_depth;
  if (current.tip_height() >= f) {
    const uint64_t checkpoint = current.tip_height() - f;
    if (fork < checkpoint) {
      trace.push_back("rule (iii): fork below checkpoint " +
                      std::to_string(checkpoint) + ": keep current");
      return r;
    }
    const uint64_t suffix = candidate.tip_height() - fork;
    if (fork == checkpoint && suffix < f) {
      trace.push_back("rule (iii): fork at checkpoint with suffix " +
                      std::to_string(suffix) + " < f = " + std::to_string(f) +
                      ": keep current");
      return r;
    }
  }

  // Rule (ii): heavier post-fork suffix wins.
  r.current_work = current.SuffixWork(fork);
  r.candidate_work = candidate.SuffixWork(fork);
  trace.push_back("suffix work: current " + Fmt(r.current_work) +
                  ", candidate " + Fmt(r.candidate_work));
  if (r.candidate_work > r.current_work) {
    r.adopt_candidate = true;
    trace.push_back("adopt candidate");
  } else if (r.candidate_work < r.current_work) {
    trace.push_back("keep current");
  } else {
    r.tie = true;
    Rng rng(options.tie_seed);
    r.adopt_candidate = rng.Bernoulli(0.5);
    trace.push_back(std::string("tie broken at random: ") +
                    (r.adopt_candidate ? "adopt candidate" : "keep current"));
  }
  return r;
}

nlohmann::json ChainToJson(const ChainView& chain) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const Block& b : chain.blocks) blocks.push_back(BlockToJson(b));
  return {{"checkpoint_depth", chain.checkpoint_depth}, {"blocks", blocks}};
}

std::vector<Block> ChainBlocksFromJson(const nlohmann::json& j,
                                       uint32_t* checkpoint_depth) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("blocks")) {
      throw Error(ErrorCode::kMalformedBlock, "chain: missing \"blocks\"");
    }
    list = &j.at("blocks");
    if (checkpoint_depth != nullptr && j.contains("checkpoint_depth")) {
      *checkpoint_depth = j.at("checkpoint_depth").get<uint32_t>();
    }
  }
  if (!list->is_array()) {
    throw Error(ErrorCode::kMalformedBlock, "chain: blocks must be an array");
  }
  std::vector<Block> blocks;
  for (const auto& b : *list) blocks.push_back(BlockFromJson(b));
  return blocks;
}

}  // namespace chrisimos
