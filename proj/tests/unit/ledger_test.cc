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
#include "chrisimos/ledger.h"

#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "chrisimos/crypto.h"
#include "chrisimos/error.h"
#include "chrisimos/random.h"

namespace chrisimos {
namespace {

const std::string kData = CHRISIMOS_TEST_DATA;

Hash256 Concat(const Hash256& a, const Hash256& b) { return Sha256Concat(a, b); }
Hash256 Leaf(const Transaction& t) { return Sha256(t.id()); }

TEST(Merkle, Examples) {
  const Transaction a = Transaction::FromString("a");
  const Transaction b = Transaction::FromString("b");
  const Transaction c = Transaction::FromString("c");
  EXPECT_EQ(a.id(), Sha256(std::string_view("a")));

  TransactionSet one{a, {}};
  EXPECT_EQ(MerkleRoot(one), Leaf(a));

  TransactionSet two{a, {b}};
  EXPECT_EQ(MerkleRoot(two), Concat(Leaf(a), Leaf(b)));

  TransactionSet three{a, {b, c}};
  EXPECT_EQ(MerkleRoot(three),
            Concat(Concat(Leaf(a), Leaf(b)), Concat(Leaf(c), Leaf(c))));
}

TEST(Merkle, Empty) {
  try {
    MerkleRoot(std::vector<Hash256>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySet);
  }
}

TEST(Merkle, AnyPayloadByteChangesRoot) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    TransactionSet txs{Transaction::FromString("coinbase"), {}};
    const int count = 1 + static_cast<int>(rng.Below(9));
    for (int i = 0; i < count; ++i) {
      txs.others.push_back(Transaction::FromString("tx" + std::to_string(rng.Next())));
    }
    const Hash256 root = MerkleRoot(txs);
    TransactionSet changed = txs;
    const size_t which = rng.Below(changed.others.size() + 1);
    Transaction& t = which == 0 ? changed.coinbase : changed.others[which - 1];
    t.payload[rng.Below(t.payload.size())] ^= 0x01;
    EXPECT_NE(MerkleRoot(changed), root);
  }
}

TEST(Committee, ThresholdExamples) {
  const CommitteeKeys keys = CommitteeKeys::Generate(4, 3, 7);
  const Hash256 digest = Sha256(std::string_view("graph"));
  std::vector<MemberSignature> sigs;
  for (uint32_t i = 0; i < 3; ++i) sigs.push_back(SignInstance(keys, i, 5, digest));

  CommitteeVerdict v = VerifyCommittee(keys.committee, 5, digest, sigs);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.valid_signatures, 3u);

  std::vector<MemberSignature> two(sigs.begin(), sigs.begin() + 2);
  v = VerifyCommittee(keys.committee, 5, digest, two);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure, CommitteeFailure::kBelowThreshold);

  // One signature by a key outside the committee.
  const CommitteeKeys outsider = CommitteeKeys::Generate(4, 3, 8);
  std::vector<MemberSignature> forged = two;
  MemberSignature rogue = SignInstance(outsider, 2, 5, digest);
  forged.push_back(rogue);
  v = VerifyCommittee(keys.committee, 5, digest, forged);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure, CommitteeFailure::kInvalidSignature);

  // Signatures over another id do not count.
  v = VerifyCommittee(keys.committee, 6, digest, sigs);
  EXPECT_FALSE(v.ok);
}

TEST(Committee, DuplicatesAndUnknownMembers) {
  const CommitteeKeys keys = CommitteeKeys::Generate(4, 3, 7);
  const Hash256 digest = Sha256(std::string_view("g"));
  std::vector<MemberSignature> sigs = {SignInstance(keys, 0, 1, digest),
                                       SignInstance(keys, 0, 1, digest),
                                       SignInstance(keys, 1, 1, digest)};
  CommitteeVerdict v = VerifyCommittee(keys.committee, 1, digest, sigs);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.valid_signatures, 2u);
  EXPECT_EQ(v.failure, CommitteeFailure::kDuplicateMember);

  const std::vector<MemberSignature> unknown = {{17, sigs[0].signature}, sigs[0], sigs[2]};
  v = VerifyCommittee(keys.committee, 1, digest, unknown);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure, CommitteeFailure::kUnknownMember);
}

TEST(Committee, BadThreshold) {
  CommitteeKeys keys = CommitteeKeys::Generate(4, 3, 7);
  const Hash256 digest = Sha256(std::string_view("g"));
  std::vector<MemberSignature> all;
  for (uint32_t i = 0; i < 4; ++i) all.push_back(SignInstance(keys, i, 1, digest));
  for (uint32_t t : {0u, 1u, 2u, 5u}) {
    keys.committee.threshold = t;
    const CommitteeVerdict v = VerifyCommittee(keys.committee, 1, digest, all);
    EXPECT_FALSE(v.ok) << t;
    EXPECT_EQ(v.failure, CommitteeFailure::kBadThreshold);
  }
}

TEST(Committee, AddingSignaturesNeverHurts) {
  const CommitteeKeys keys = CommitteeKeys::Generate(7, 4, 3);
  const CommitteeKeys outsider = CommitteeKeys::Generate(7, 4, 4);
  const Hash256 digest = Sha256(std::string_view("mono"));
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<MemberSignature> sigs;
    bool was_ok = false;
    for (int step = 0; step < 12; ++step) {
      const uint32_t member = static_cast<uint32_t>(rng.Below(8));
      MemberSignature s;
      switch (rng.Below(3)) {
        case 0: s = SignInstance(keys, member % 7, 9, digest); break;
        case 1: s = SignInstance(outsider, member % 7, 9, digest); break;
        default: s = {member, SignInstance(keys, 0, 9, digest).signature}; break;
      }
      sigs.push_back(s);
      const bool ok = VerifyCommittee(keys.committee, 9, digest, sigs).ok;
      EXPECT_FALSE(was_ok && !ok);
      was_ok = ok;
    }
  }
}

TEST(Instance, RejectsIsolatedVertex) {
  const CommitteeKeys keys = CommitteeKeys::Generate(4, 3, 7);
  const std::vector<Edge> edges = {{1, 2}};
  auto g = std::make_shared<const Graph>(Graph::FromEdges(3, edges));
  try {
    ProblemInstance::Create(1, g, keys, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroMinDegree);
  }
}

TEST(Instance, DigestIsCanonicalText) {
  const std::vector<Edge> edges = {{2, 3}, {1, 2}, {3, 1}};
  const Graph g = Graph::FromEdges(3, edges);
  EXPECT_EQ(GraphDigest(g), Sha256(std::string_view("3 3\n1 2\n1 3\n2 3\n")));
}

Block Golden() { return LoadBlockJson(kData + "/block_honest.json"); }

TEST(Serialization, GoldenRoundTrip) {
  const Block b = Golden();
  const nlohmann::json j = ReadJsonFile(kData + "/block_honest.json");
  EXPECT_EQ(ToHex(b.Hash()), j.at("hash").get<std::string>());
  EXPECT_EQ(b.header.id_g, 1u);
  EXPECT_EQ(b.header.delta_hat, 4u);
  EXPECT_EQ(b.header.ds.size(), 21u);

  const Bytes bytes = SerializeBlock(b);
  const Block back = DeserializeBlock(bytes);
  EXPECT_EQ(back, b);
  EXPECT_EQ(SerializeBlock(back), bytes);
  EXPECT_EQ(BlockFromJson(BlockToJson(b)), b);
  EXPECT_EQ(BlockToJson(b).dump(), j.dump());
}

TEST(Serialization, GenesisRoundTrip) {
  const Block g = MakeGenesis();
  EXPECT_EQ(g.header.id_g, 0u);
  EXPECT_TRUE(g.header.ds.empty());
  EXPECT_EQ(DeserializeBlock(SerializeBlock(g)), g);
}

TEST(Serialization, EveryTruncationIsMalformed) {
  const Bytes bytes = SerializeBlock(Golden());
  for (size_t len = 0; len < bytes.size(); ++len) {
    try {
      DeserializeBlock(std::span<const uint8_t>(bytes.data(), len));
      FAIL() << len;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kMalformedBlock) << len;
    }
  }
  Bytes longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(DeserializeBlock(longer), Error);
}

TEST(Serialization, DiagnosticsNameTheField) {
  Bytes bytes = SerializeBlock(Golden());
  bytes[0] = 'X';
  try {
    DeserializeBlock(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("magic"), std::string::npos) << e.what();
  }
}

TEST(Serialization, UnsortedSetIsMalformed) {
  Block b = Golden();
  std::swap(b.header.ds[0], b.header.ds[1]);
  EXPECT_THROW(DeserializeBlock(SerializeBlock(b)), Error);
}

TEST(Serialization, JsonFieldOrderDoesNotMatter) {
  const nlohmann::json j = ReadJsonFile(kData + "/block_honest.json");
  // Rebuild every object with keys inserted in reverse order.
  std::function<nlohmann::ordered_json(const nlohmann::json&)> reorder =
      [&reorder](const nlohmann::json& in) -> nlohmann::ordered_json {
    if (in.is_object()) {
      nlohmann::ordered_json out = nlohmann::ordered_json::object();
      std::vector<std::string> keys;
      for (auto it = in.begin(); it != in.end(); ++it) keys.push_back(it.key());
      for (auto k = keys.rbegin(); k != keys.rend(); ++k) out[*k] = reorder(in.at(*k));
      return out;
    }
    if (in.is_array()) {
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& e : in) out.push_back(reorder(e));
      return out;
    }
    return nlohmann::ordered_json(in);
  };
  const std::string text = reorder(j).dump();
  EXPECT_NE(text, j.dump());
  const Block b = BlockFromJson(nlohmann::json::parse(text));
  EXPECT_EQ(b.Hash(), Golden().Hash());
}

TEST(Serialization, JsonHashMismatchIsMalformed) {
  nlohmann::json j = ReadJsonFile(kData + "/block_honest.json");
  j["header"]["timestamp"] = j["header"]["timestamp"].get<uint64_t>() + 1;
  try {
    BlockFromJson(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedBlock);
  }
  j.erase("hash");
  EXPECT_NO_THROW(BlockFromJson(j));
  EXPECT_THROW(BlockFromJson(nlohmann::json::parse("{\"header\": 3}")), Error);
}

TEST(InstanceFiles, SidecarLoads) {
  const Committee c = CommitteeFromJson(ReadJsonFile(kData + "/committee.json"));
  const ProblemInstance inst = LoadInstance(kData + "/instance1.json", c);
  EXPECT_EQ(inst.id_g, 1u);
  EXPECT_EQ(inst.graph->order(), 40u);
  EXPECT_EQ(inst.digest, GraphDigest(*inst.graph));
  EXPECT_TRUE(inst.Verify().ok);
  const CommitteeKeys keys =
      CommitteeKeysFromJson(ReadJsonFile(kData + "/committee_keys.json"));
  EXPECT_EQ(keys.committee, c);
  EXPECT_EQ(CommitteeFromJson(CommitteeToJson(c)), c);
}

}  // namespace
}  // namespace chrisimos
