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
#include "chrisimos/verification.h"

#include <algorithm>
#include <string>
#include <utility>

#include "chrisimos/error.h"
#include "chrisimos/transform.h"

namespace chrisimos {
namespace {

VerifyResult Reject(RejectReason reason, std::string detail) {
  VerifyResult r;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

ExtendedGraph ExtendFromHeader(const Block& block, const ProblemInstance& inst,
                               int lambda) {
  return ExtendedGraph::Extend(inst.graph, block.header.h_prev,
                               block.header.h_mr, lambda,
                               block.header.delta_hat);
}

}  // namespace

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone: return "None";
    case RejectReason::kWrongParent: return "WrongParent";
    case RejectReason::kBadMerkle: return "BadMerkle";
    case RejectReason::kBadInstanceDigest: return "BadInstanceDigest";
    case RejectReason::kBadSignature: return "BadSignature";
    case RejectReason::kLate: return "Late";
    case RejectReason::kStaleInstanceId: return "StaleInstanceId";
    case RejectReason::kMalformedSet: return "MalformedSet";
    case RejectReason::kBadDeltaHat: return "BadDeltaHat";
    case RejectReason::kNotBetter: return "NotBetter";
    case RejectReason::kNotDominating: return "NotDominating";
  }
  return "Unknown";
}

EpochVerifierState EpochVerifierState::Start(const Graph& g,
                                             uint64_t deadline) {
  EpochVerifierState state;
  state.past_size_ds = 2 * static_cast<uint64_t>(g.order());
  state.epoch_deadline = deadline;
  return state;
}

VerifyResult CheckBlockStatic(const Block& block, const ProblemInstance& inst,
                              const Hash256& h_prev, uint64_t prev_id_g) {
  const BlockHeader& h = block.header;
  if (h.h_prev != h_prev) {
    return Reject(RejectReason::kWrongParent, "h_prev is not the current tip");
  }
  if (MerkleRoot(block.body) != h.h_mr) {
    return Reject(RejectReason::kBadMerkle, "h_mr does not match the body");
  }
  if (inst.graph == nullptr || h.id_g != inst.id_g ||
      h.graph_digest != inst.digest || GraphDigest(*inst.graph) != inst.digest) {
    return Reject(RejectReason::kBadInstanceDigest,
                  "header does not name this instance");
  }
  const CommitteeVerdict verdict =
      VerifyCommittee(inst.committee, h.id_g, h.graph_digest, h.sigs);
  if (!verdict.ok) {
    return Reject(RejectReason::kBadSignature,
                  std::string(CommitteeFailureName(verdict.failure)) + ", " +
                      std::to_string(verdict.valid_signatures) + " valid of " +
                      std::to_string(inst.committee.threshold) + " needed");
  }
  if (h.id_g <= prev_id_g) {
    return Reject(RejectReason::kStaleInstanceId,
                  "id " + std::to_string(h.id_g) + " <= previous " +
                      std::to_string(prev_id_g));
  }
  const uint64_t n_t = 2 * static_cast<uint64_t>(inst.graph->order());
  if (h.ds.empty()) return Reject(RejectReason::kMalformedSet, "empty set");
  for (size_t i = 0; i < h.ds.size(); ++i) {
    if (h.ds[i] < 1 || h.ds[i] > n_t ||
        (i > 0 && h.ds[i] <= h.ds[i - 1])) {
      return Reject(RejectReason::kMalformedSet,
                    "ids must be strictly increasing within 1.." +
                        std::to_string(n_t));
    }
  }
  if (h.delta_hat != 2 * inst.graph->min_degree()) {
    return Reject(RejectReason::kBadDeltaHat,
                  "delta_hat " + std::to_string(h.delta_hat) + " != 2 * " +
                      std::to_string(inst.graph->min_degree()));
  }
  VerifyResult ok;
  ok.accepted = true;
  return ok;
}

VerifyResult CheckCoverage(const Block& block, const ProblemInstance& inst,
                           int lambda) {
  const ExtendedGraph eg = ExtendFromHeader(block, inst, lambda);
  const uint32_t n_t = eg.order();
  std::vector<char> visited(n_t + 1, 0);
  uint32_t count = 0;
  auto mark = [&](VertexId u) {
    if (!visited[u]) {
      visited[u] = 1;
      ++count;
    }
  };
  VerifyResult r;
  for (VertexId v : block.header.ds) {
    mark(v);
    r.adjacency_cells += eg.ForEachNeighbor(v, mark);
  }
  if (count != n_t) {
    VertexId first = 1;
    while (visited[first]) ++first;
    r.reason = RejectReason::kNotDominating;
    r.detail = std::to_string(n_t - count) + " vertices uncovered, first " +
               std::to_string(first);
    return r;
  }
  r.accepted = true;
  return r;
}

VerifyResult VerifyBlock(const Block& block, const ProblemInstance& inst,
                         const VerifyContext& ctx, EpochVerifierState& state) {
  VerifyResult r = CheckBlockStatic(block, inst, ctx.h_prev, ctx.prev_id_g);
  if (!r.accepted) return r;
  if (ctx.now >= state.epoch_deadline) {
    return Reject(RejectReason::kLate,
                  "arrived at " + std::to_string(ctx.now) + ", deadline " +
                      std::to_string(state.epoch_deadline));
  }
  if (block.header.ds.size() >= state.past_size_ds) {
    return Reject(RejectReason::kNotBetter,
                  "|ds| = " + std::to_string(block.header.ds.size()) +
                      ", best so far " + std::to_string(state.past_size_ds));
  }
  r = CheckCoverage(block, inst, ctx.lambda);
  if (!r.accepted) return r;
  state.past_size_ds = block.header.ds.size();
  state.best_block = block;
  return r;
}

std::optional<Block> FinalizeEpoch(const EpochVerifierState& state) {
  return state.best_block;
}

DominatingSet RetrieveDominatingSetOfG(const Block& block,
                                       const ProblemInstance& inst,
                                       int lambda) {
  const ExtendedGraph eg = ExtendFromHeader(block, inst, lambda);
  const Graph& g = eg.base();
  const uint32_t n = g.order();
  std::vector<char> covered(n + 1, 0);
  std::vector<char> chosen(n + 1, 0);
  auto take = [&](VertexId v) {
    chosen[v] = 1;
    covered[v] = 1;
    for (VertexId u : g.Neighbors(v)) covered[u] = 1;
  };
  for (VertexId v : block.header.ds) {
    if (v <= n) take(v);
  }
  for (VertexId w : block.header.ds) {
    if (w <= n) continue;
    bool useful = false;
    eg.ForEachBaseNeighborOfMirror(w, [&](VertexId u) {
      if (!covered[u]) useful = true;
    });
    if (useful) take(eg.Partner(w));
  }
  if (std::find(covered.begin() + 1, covered.end(), 0) != covered.end()) {
    throw Error(ErrorCode::kNotDominatingG,
                "retrieved set leaves a vertex of G uncovered");
  }

  // times[u]: members in the closed neighborhood of u.
  std::vector<uint32_t> times(n + 1, 0);
  for (VertexId v = 1; v <= n; ++v) {
    if (!chosen[v]) continue;
    ++times[v];
    for (VertexId u : g.Neighbors(v)) ++times[u];
  }
  DominatingSet ds;
  for (VertexId v = 1; v <= n; ++v) {
    if (!chosen[v]) continue;
    bool redundant = times[v] >= 2;
    for (VertexId u : g.Neighbors(v)) redundant = redundant && times[u] >= 2;
    if (redundant) {
      --times[v];
      for (VertexId u : g.Neighbors(v)) --times[u];
    } else {
      ds.vertices.push_back(v);
    }
  }
  return ds;
}

}  // namespace chrisimos
