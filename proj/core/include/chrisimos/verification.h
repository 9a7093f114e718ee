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
#ifndef CHRISIMOS_VERIFICATION_H_
#define CHRISIMOS_VERIFICATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chrisimos/bit_rules.h"
#include "chrisimos/graph.h"
#include "chrisimos/ledger.h"
#include "chrisimos/mining.h"

namespace chrisimos {

enum class RejectReason {
  kNone,
  kWrongParent,  // header h_prev is not the tip we extend
  kBadMerkle,
  kBadInstanceDigest,
  kBadSignature,
  kLate,
  kStaleInstanceId,
  kMalformedSet,  // ids outside 1..2n, unsorted or repeated
  kBadDeltaHat,   // header delta_hat != 2 * delta(G)
  kNotBetter,
  kNotDominating,
};

std::string_view RejectReasonName(RejectReason reason);

struct EpochVerifierState {
  uint64_t past_size_ds = 0;
  std::optional<Block> best_block;
  uint64_t epoch_deadline = 0;

  // past_size_ds starts at 2|V|.
  static EpochVerifierState Start(const Graph& g, uint64_t deadline);
};

// What the verifier knows about the chain it is extending.
struct VerifyContext {
  Hash256 h_prev{};
  uint64_t prev_id_g = 0;
  uint64_t now = 0;  // arrival time, same ticks as the epoch deadline
  int lambda = kDefaultLambda;
};

struct VerifyResult {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::string detail;
  // Adjacency cells read by the coverage check.
  uint64_t adjacency_cells = 0;
};

// On Accept the state takes the block as the new best.
VerifyResult VerifyBlock(const Block& block, const ProblemInstance& inst,
                         const VerifyContext& ctx, EpochVerifierState& state);

// Header-only checks shared with chain selection: everything except timing,
// epoch improvement and coverage.
VerifyResult CheckBlockStatic(const Block& block, const ProblemInstance& inst,
                              const Hash256& h_prev, uint64_t prev_id_g);

// Coverage of G_T using only the closed neighborhoods of the set members.
VerifyResult CheckCoverage(const Block& block, const ProblemInstance& inst,
                           int lambda);

// The best block seen, if any.
std::optional<Block> FinalizeEpoch(const EpochVerifierState& state);

// Maps an accepted DS(G_T) back to a dominating set of G: keep V-side
// members, add the partner of every mirror member that covers a vertex of G
// still uncovered, then drop redundant members in ascending id order.
// Throws Error(kNotDominatingG) if the result does not dominate G.
DominatingSet RetrieveDominatingSetOfG(const Block& block,
                                       const ProblemInstance& inst,
                                       int lambda = kDefaultLambda);

}  // namespace chrisimos

#endif  // CHRISIMOS_VERIFICATION_H_
