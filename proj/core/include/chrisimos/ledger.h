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
#ifndef CHRISIMOS_LEDGER_H_
#define CHRISIMOS_LEDGER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "chrisimos/crypto.h"
#include "chrisimos/graph.h"

namespace chrisimos {

// Opaque payload with a fee. The id is H(payload).
struct Transaction {
  Bytes payload;
  uint64_t fee = 0;

  static Transaction FromString(std::string_view payload, uint64_t fee = 0);
  Hash256 id() const { return Sha256(payload); }

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

// The coinbase comes first. Its payload carries the miner address, which is
// what makes every miner's Merkle root (and hence extended graph) distinct.
struct TransactionSet {
  Transaction coinbase;
  std::vector<Transaction> others;

  std::vector<Hash256> Ids() const;

  friend bool operator==(const TransactionSet&, const TransactionSet&) =
      default;
};

// Leaves are H(id); odd internal levels duplicate their last node; a single
// leaf is its own root. Throws Error(kEmptySet).
Hash256 MerkleRoot(std::span<const Hash256> ids);
Hash256 MerkleRoot(const TransactionSet& txs);

// H(G) over the canonical edge-list text: "n m\n" followed by the sorted
// "u v\n" lines with u < v.
Hash256 GraphDigest(const Graph& g);

struct MemberSignature {
  uint32_t member = 0;  // index into Committee::members
  Signature signature{};

  friend bool operator==(const MemberSignature&, const MemberSignature&) =
      default;
};

struct Committee {
  std::vector<PublicKey> members;
  uint32_t threshold = 0;

  friend bool operator==(const Committee&, const Committee&) = default;
};

// Committee with its signing keys; keys are derived from a seed so test
// committees are reproducible.
struct CommitteeKeys {
  Committee committee;
  std::vector<SecretKey> secret_keys;

  static CommitteeKeys Generate(uint32_t members, uint32_t threshold,
                                uint64_t seed);
};

// Members sign H(id_g as 8 big-endian bytes || digest).
Hash256 InstanceMessage(uint64_t id_g, const Hash256& digest);
MemberSignature SignInstance(const CommitteeKeys& keys, uint32_t member,
                             uint64_t id_g, const Hash256& digest);

enum class CommitteeFailure {
  kNone,
  kBadThreshold,      // t <= n_c / 2 or t > n_c
  kUnknownMember,     // member index outside the committee
  kInvalidSignature,  // signature does not verify under the member key
  kDuplicateMember,
  kBelowThreshold,
};

struct CommitteeVerdict {
  bool ok = false;
  uint32_t valid_signatures = 0;
  CommitteeFailure failure = CommitteeFailure::kNone;
};

std::string_view CommitteeFailureName(CommitteeFailure f);

// True iff at least t distinct members produced valid signatures. Invalid or
// unknown entries are reported but only the count of valid distinct members
// decides, so adding signatures never turns a pass into a fail.
CommitteeVerdict VerifyCommittee(const Committee& committee, uint64_t id_g,
                                 const Hash256& digest,
                                 std::span<const MemberSignature> sigs);

struct ProblemInstance {
  uint64_t id_g = 0;
  std::shared_ptr<const Graph> graph;
  Hash256 digest{};
  std::vector<MemberSignature> sigs;
  Committee committee;

  // Signs with the first `signers` members. Throws Error(kZeroMinDegree)
  // when the graph has an isolated vertex.
  static ProblemInstance Create(uint64_t id_g, std::shared_ptr<const Graph> g,
                                const CommitteeKeys& keys, uint32_t signers);
  CommitteeVerdict Verify() const {
    return VerifyCommittee(committee, id_g, digest, sigs);
  }
};

struct BlockHeader {
  Hash256 h_prev{};
  Hash256 h_mr{};
  uint64_t id_g = 0;
  Hash256 graph_digest{};
  std::vector<MemberSignature> sigs;
  uint32_t delta_hat = 0;
  std::vector<VertexId> ds;  // sorted, over G_T ids 1..2n
  uint64_t timestamp = 0;    // ticks since the instance was announced

  friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
  BlockHeader header;
  TransactionSet body;

  // H(canonical header bytes).
  Hash256 Hash() const;

  friend bool operator==(const Block&, const Block&) = default;
};

// The chain root: zero parent hash, instance id 0 and an empty set.
Block MakeGenesis();

// Canonical big-endian, length-prefixed encoding.
Bytes SerializeHeader(const BlockHeader& header);
Bytes SerializeBlock(const Block& block);
// Throws Error(kMalformedBlock) naming the offending field.
Block DeserializeBlock(std::span<const uint8_t> bytes);

nlohmann::json BlockToJson(const Block& block);
Block BlockFromJson(const nlohmann::json& j);
Block LoadBlockJson(const std::string& path);
void SaveBlockJson(const Block& block, const std::string& path);

nlohmann::json CommitteeToJson(const Committee& committee);
Committee CommitteeFromJson(const nlohmann::json& j);
nlohmann::json CommitteeKeysToJson(const CommitteeKeys& keys);
CommitteeKeys CommitteeKeysFromJson(const nlohmann::json& j);

// Instance sidecar: {"id_g", "digest", "sigs", "graph"} where "graph" is the
// edge-list path, relative to the sidecar's directory when not absolute.
nlohmann::json InstanceToJson(const ProblemInstance& inst,
                              const std::string& graph_path);
ProblemInstance LoadInstance(const std::string& sidecar_path,
                             const Committee& committee);

nlohmann::json SignaturesToJson(std::span<const MemberSignature> sigs);
std::vector<MemberSignature> SignaturesFromJson(const nlohmann::json& j);

nlohmann::json ReadJsonFile(const std::string& path);
void WriteJsonFile(const nlohmann::json& j, const std::string& path);

}  // namespace chrisimos

#endif  // CHRISIMOS_LEDGER_H_
