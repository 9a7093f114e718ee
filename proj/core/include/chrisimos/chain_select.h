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
#ifndef CHRISIMOS_CHAIN_SELECT_H_
#define CHRISIMOS_CHAIN_SELECT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "chrisimos/bit_rules.h"
#include "chrisimos/ledger.h"

namespace chrisimos {

inline constexpr uint32_t kDefaultCheckpointDepth = 6;

// (2m + dhat(n-1)/2) * n * [2n(1+ln(1+3d/2)) / (1+3d/2)] / |DS|.
double WorkDone(uint64_t n, uint64_t m, uint32_t delta, uint32_t delta_hat,
                uint64_t ds_size);
// Zero for the genesis block.
double WorkDone(const Block& block, const ProblemInstance& inst);

// Instances known to a node, by id.
using InstanceBook = std::map<uint64_t, ProblemInstance>;

struct ChainView {
  std::vector<Block> blocks;  // blocks[0] is genesis
  uint32_t checkpoint_depth = kDefaultCheckpointDepth;
  std::vector<double> work;  // per block; filled by Build

  // Throws Error(kMalformedInstance) for a block whose instance is unknown.
  static ChainView Build(std::vector<Block> blocks, uint32_t f,
                         const InstanceBook& instances);
  uint64_t tip_height() const { return blocks.size() - 1; }
  double SuffixWork(uint64_t after_height) const;
};

// True iff tip - height >= f. Throws Error(kHeightOutOfRange).
bool IsCheckpointed(const ChainView& chain, uint64_t height);

struct SelectOptions {
  uint64_t tie_seed = 0;
  int lambda = kDefaultLambda;
};

struct SelectResult {
  bool adopt_candidate = false;
  uint64_t fork_height = 0;
  double current_work = 0;    // post-fork suffix
  double candidate_work = 0;  // post-fork suffix
  bool tie = false;
  std::vector<std::string> trace;
};

// Throws Error(kIncompatibleGenesis) when the chains start differently.
SelectResult SelectChain(const ChainView& current, const ChainView& candidate,
                         const InstanceBook& instances,
                         const SelectOptions& options = {});

nlohmann::json ChainToJson(const ChainView& chain);
// Accepts {"checkpoint_depth": f, "blocks": [...]} or a bare block array.
std::vector<Block> ChainBlocksFromJson(const nlohmann::json& j,
                                       uint32_t* checkpoint_depth = nullptr);

}  // namespace chrisimos

#endif  // CHRISIMOS_CHAIN_SELECT_H_
