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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <utility>

#include "chrisimos/error.h"
#include "chrisimos/random.h"

namespace chrisimos {
namespace {

using nlohmann::json;

constexpr std::array<uint8_t, 4> kBlockMagic = {'C', 'H', 'R', 'B'};
constexpr uint8_t kBlockVersion = 1;

class Writer {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U32(uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<uint8_t>(v >> s));
  }
  void U64(uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<uint8_t>(v >> s));
  }
  void Raw(std::span<const uint8_t> data) {
    out_.insert(out_.end(), data.begin(), data.end());
  }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t U8(const char* field) { return Need(1, field)[0]; }
  uint32_t U32(const char* field) {
    const auto p = Need(4, field);
    uint32_t v = 0;
    for (uint8_t b : p) v = (v << 8) | b;
    return v;
  }
  uint64_t U64(const char* field) {
    const auto p = Need(8, field);
    uint64_t v = 0;
    for (uint8_t b : p) v = (v << 8) | b;
    return v;
  }
  template <size_t N>
  std::array<uint8_t, N> Array(const char* field) {
    const auto p = Need(N, field);
    std::array<uint8_t, N> out{};
    std::copy(p.begin(), p.end(), out.begin());
    return out;
  }
  std::span<const uint8_t> Take(size_t n, const char* field) {
    return Need(n, field);
  }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  std::span<const uint8_t> Need(size_t n, const char* field) {
    if (remaining() < n) {
      throw Error(ErrorCode::kMalformedBlock,
                  std::string("truncated input while reading ") + field);
    }
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedBlock, what);
}

void CheckDominatingSetShape(const BlockHeader& h) {
  for (size_t i = 0; i < h.ds.size(); ++i) {
    if (h.ds[i] == 0) Malformed("ds: vertex id 0");
    if (i > 0 && h.ds[i] <= h.ds[i - 1]) {
      Malformed("ds: ids must be strictly increasing");
    }
  }
  if (h.id_g != 0 && h.ds.empty()) Malformed("ds: empty dominating set");
}

template <size_t N>
std::array<uint8_t, N> FixedFromHex(const std::string& hex, const char* field) {
  Bytes bytes;
  try {
    bytes = FromHex(hex);
  } catch (const Error&) {
    Malformed(std::string(field) + ": invalid hex");
  }
  if (bytes.size() != N) {
    Malformed(std::string(field) + ": expected " + std::to_string(N) +
              " bytes");
  }
  std::array<uint8_t, N> out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

json TransactionToJson(const Transaction& tx) {
  const Hash256 id = tx.id();
  return {{"id", ToHex(id)}, {"payload", ToHex(tx.payload)}, {"fee", tx.fee}};
}

Transaction TransactionFromJson(const json& j) {
  Transaction tx;
  try {
    tx.payload = FromHex(j.at("payload").get<std::string>());
  } catch (const Error&) {
    Malformed("transaction payload: invalid hex");
  }
  tx.fee = j.at("fee").get<uint64_t>();
  if (j.contains("id")) {
    const auto id = FixedFromHex<32>(j.at("id").get<std::string>(), "tx id");
    if (id != tx.id()) Malformed("transaction id does not match payload");
  }
  return tx;
}

}  // namespace

Transaction Transaction::FromString(std::string_view payload, uint64_t fee) {
  return {Bytes(payload.begin(), payload.end()), fee};
}

std::vector<Hash256> TransactionSet::Ids() const {
  std::vector<Hash256> ids;
  ids.reserve(1 + others.size());
  ids.push_back(coinbase.id());
  for (const auto& tx : others) ids.push_back(tx.id());
  return ids;
}

Hash256 MerkleRoot(std::span<const Hash256> ids) {
  if (ids.empty()) throw Error(ErrorCode::kEmptySet, "no transactions");
  std::vector<Hash256> level;
  level.reserve(ids.size());
  for (const auto& id : ids) level.push_back(Sha256(id));
  while (level.size() > 1) {
    if (level.size() % 2 == 1) level.push_back(level.back());
    std::vector<Hash256> next;
    next.reserve(level.size() / 2);
    for (size_t i = 0; i < level.size(); i += 2) {
      next.push_back(Sha256Concat(level[i], level[i + 1]));
    }
    level = std::move(next);
  }
  return level.front();
}

Hash256 MerkleRoot(const TransactionSet& txs) {
  const auto ids = txs.Ids();
  return MerkleRoot(ids);
}

Hash256 GraphDigest(const Graph& g) { return Sha256(GraphToText(g)); }

CommitteeKeys CommitteeKeys::Generate(uint32_t members, uint32_t threshold,
                                      uint64_t seed) {
  CommitteeKeys keys;
  keys.committee.threshold = threshold;
  for (uint32_t i = 0; i < members; ++i) {
    Hash256 key_seed{};
    uint64_t x = MixSeed(seed, i);
    for (size_t b = 0; b < key_seed.size(); ++b) {
      if (b % 8 == 0 && b > 0) x = SplitMix64(x);
      key_seed[b] = static_cast<uint8_t>(x >> (8 * (b % 8)));
    }
    const KeyPair kp = KeyPairFromSeed(key_seed);
    keys.committee.members.push_back(kp.public_key);
    keys.secret_keys.push_back(kp.secret_key);
  }
  return keys;
}

Hash256 InstanceMessage(uint64_t id_g, const Hash256& digest) {
  Writer w;
  w.U64(id_g);
  w.Raw(digest);
  return Sha256(w.Take());
}

MemberSignature SignInstance(const CommitteeKeys& keys, uint32_t member,
                             uint64_t id_g, const Hash256& digest) {
  if (member >= keys.secret_keys.size()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown committee member");
  }
  const Hash256 msg = InstanceMessage(id_g, digest);
  return {member, Sign(keys.secret_keys[member], msg)};
}

std::string_view CommitteeFailureName(CommitteeFailure f) {
  switch (f) {
    case CommitteeFailure::kNone: return "none";
    case CommitteeFailure::kBadThreshold: return "bad_threshold";
    case CommitteeFailure::kUnknownMember: return "unknown_member";
    case CommitteeFailure::kInvalidSignature: return "invalid_signature";
    case CommitteeFailure::kDuplicateMember: return "duplicate_member";
    case CommitteeFailure::kBelowThreshold: return "below_threshold";
  }
  return "unknown";
}

CommitteeVerdict VerifyCommittee(const Committee& committee, uint64_t id_g,
                                 const Hash256& digest,
                                 std::span<const MemberSignature> sigs) {
  CommitteeVerdict verdict;
  const auto n_c = static_cast<uint32_t>(committee.members.size());
  if (committee.threshold * 2 <= n_c || committee.threshold > n_c) {
    verdict.failure = CommitteeFailure::kBadThreshold;
    return verdict;
  }
  const Hash256 msg = InstanceMessage(id_g, digest);
  std::set<uint32_t> good;
  CommitteeFailure first_problem = CommitteeFailure::kNone;
  for (const auto& s : sigs) {
    CommitteeFailure problem = CommitteeFailure::kNone;
    if (s.member >= n_c) {
      problem = CommitteeFailure::kUnknownMember;
    } else if (!VerifySignature(committee.members[s.member], msg,
                                s.signature)) {
      problem = CommitteeFailure::kInvalidSignature;
    } else if (!good.insert(s.member).second) {
      problem = CommitteeFailure::kDuplicateMember;
    }
    if (first_problem == CommitteeFailure::kNone) first_problem = problem;
  }
  verdict.valid_signatures = static_cast<uint32_t>(good.size());
  verdict.ok = verdict.valid_signatures >= committee.threshold;
  if (!verdict.ok) {
    verdict.failure = first_problem == CommitteeFailure::kNone
                          ? CommitteeFailure::kBelowThreshold
                          : first_problem;
  }
  return verdict;
}

ProblemInstance ProblemInstance::Create(uint64_t id_g,
                                        std::shared_ptr<const Graph> g,
                                        const CommitteeKeys& keys,
                                        uint32_t signers) {
  if (g->min_degree() < 1) {
    throw Error(ErrorCode::kZeroMinDegree,
                "instances need minimum degree >= 1");
  }
  ProblemInstance inst;
  inst.id_g = id_g;
  inst.digest = GraphDigest(*g);
  inst.graph = std::move(g);
  inst.committee = keys.committee;
  signers = std::min<uint32_t>(signers, keys.committee.members.size());
  for (uint32_t i = 0; i < signers; ++i) {
    inst.sigs.push_back(SignInstance(keys, i, id_g, inst.digest));
  }
  return inst;
}

Bytes SerializeHeader(const BlockHeader& h) {
  Writer w;
  w.Raw(h.h_prev);
  w.Raw(h.h_mr);
  w.U64(h.id_g);
  w.Raw(h.graph_digest);
  w.U32(static_cast<uint32_t>(h.sigs.size()));
  for (const auto& s : h.sigs) {
    w.U32(s.member);
    w.Raw(s.signature);
  }
  w.U32(h.delta_hat);
  w.U32(static_cast<uint32_t>(h.ds.size()));
  for (VertexId v : h.ds) w.U32(v);
  w.U64(h.timestamp);
  return w.Take();
}

Hash256 Block::Hash() const { return Sha256(SerializeHeader(header)); }

Block MakeGenesis() {
  Block b;
  b.body.coinbase = Transaction::FromString("genesis");
  b.header.h_mr = MerkleRoot(b.body);
  return b;
}

Bytes SerializeBlock(const Block& block) {
  Writer w;
  w.Raw(kBlockMagic);
  w.U8(kBlockVersion);
  const Bytes header = SerializeHeader(block.header);
  w.U32(static_cast<uint32_t>(header.size()));
  w.Raw(header);
  w.U32(static_cast<uint32_t>(1 + block.body.others.size()));
  auto put_tx = [&w](const Transaction& tx) {
    w.U64(tx.fee);
    w.U32(static_cast<uint32_t>(tx.payload.size()));
    w.Raw(tx.payload);
  };
  put_tx(block.body.coinbase);
  for (const auto& tx : block.body.others) put_tx(tx);
  return w.Take();
}

Block DeserializeBlock(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  if (r.Array<4>("magic") != kBlockMagic) Malformed("magic: not a block");
  if (const uint8_t v = r.U8("version"); v != kBlockVersion) {
    Malformed("version: unsupported " + std::to_string(v));
  }
  const uint32_t header_len = r.U32("header length");
  Reader h(r.Take(header_len, "header"));
  Block b;
  b.header.h_prev = h.Array<32>("h_prev");
  b.header.h_mr = h.Array<32>("h_mr");
  b.header.id_g = h.U64("id_g");
  b.header.graph_digest = h.Array<32>("graph_digest");
  const uint32_t nsigs = h.U32("signature count");
  if (nsigs > h.remaining() / 68) Malformed("sigs: count exceeds input");
  for (uint32_t i = 0; i < nsigs; ++i) {
    MemberSignature s;
    s.member = h.U32("signature member");
    s.signature = h.Array<64>("signature");
    b.header.sigs.push_back(s);
  }
  b.header.delta_hat = h.U32("delta_hat");
  const uint32_t nds = h.U32("ds count");
  if (nds > h.remaining() / 4) Malformed("ds: count exceeds input");
  b.header.ds.reserve(nds);
  for (uint32_t i = 0; i < nds; ++i) b.header.ds.push_back(h.U32("ds vertex"));
  b.header.timestamp = h.U64("timestamp");
  if (h.remaining() != 0) Malformed("header: trailing bytes");
  CheckDominatingSetShape(b.header);

  const uint32_t ntx = r.U32("transaction count");
  if (ntx == 0) Malformed("body: missing coinbase transaction");
  for (uint32_t i = 0; i < ntx; ++i) {
    Transaction tx;
    tx.fee = r.U64("transaction fee");
    const uint32_t len = r.U32("transaction length");
    const auto payload = r.Take(len, "transaction payload");
    tx.payload.assign(payload.begin(), payload.end());
    if (i == 0) {
      b.body.coinbase = std::move(tx);
    } else {
      b.body.others.push_back(std::move(tx));
    }
  }
  if (r.remaining() != 0) Malformed("block: trailing bytes");
  return b;
}

json SignaturesToJson(std::span<const MemberSignature> sigs) {
  json out = json::array();
  for (const auto& s : sigs) {
    out.push_back({{"member", s.member}, {"sig", ToHex(s.signature)}});
  }
  return out;
}

std::vector<MemberSignature> SignaturesFromJson(const json& j) {
  std::vector<MemberSignature> out;
  for (const auto& e : j) {
    MemberSignature s;
    s.member = e.at("member").get<uint32_t>();
    s.signature = FixedFromHex<64>(e.at("sig").get<std::string>(), "sig");
    out.push_back(s);
  }
  return out;
}

json BlockToJson(const Block& block) {
  const BlockHeader& h = block.header;
  json others = json::array();
  for (const auto& tx : block.body.others) others.push_back(TransactionToJson(tx));
  return {
      {"version", kBlockVersion},
      {"hash", ToHex(block.Hash())},
      {"header",
       {{"h_prev", ToHex(h.h_prev)},
        {"h_mr", ToHex(h.h_mr)},
        {"id_g", h.id_g},
        {"graph_digest", ToHex(h.graph_digest)},
        {"sigs", SignaturesToJson(h.sigs)},
        {"delta_hat", h.delta_hat},
        {"ds", h.ds},
        {"timestamp", h.timestamp}}},
      {"body",
       {{"coinbase", TransactionToJson(block.body.coinbase)},
        {"transactions", others}}},
  };
}

Block BlockFromJson(const json& j) {
  Block b;
  try {
    if (j.contains("version") && j.at("version").get<int>() != kBlockVersion) {
      Malformed("version: unsupported");
    }
    const json& h = j.at("header");
    b.header.h_prev = FixedFromHex<32>(h.at("h_prev").get<std::string>(), "h_prev");
    b.header.h_mr = FixedFromHex<32>(h.at("h_mr").get<std::string>(), "h_mr");
    b.header.id_g = h.at("id_g").get<uint64_t>();
    b.header.graph_digest = FixedFromHex<32>(
        h.at("graph_digest").get<std::string>(), "graph_digest");
    b.header.sigs = SignaturesFromJson(h.at("sigs"));
    b.header.delta_hat = h.at("delta_hat").get<uint32_t>();
    b.header.ds = h.at("ds").get<std::vector<VertexId>>();
    b.header.timestamp = h.at("timestamp").get<uint64_t>();
    const json& body = j.at("body");
    b.body.coinbase = TransactionFromJson(body.at("coinbase"));
    for (const auto& tx : body.at("transactions")) {
      b.body.others.push_back(TransactionFromJson(tx));
    }
  } catch (const json::exception& e) {
    Malformed(std::string("json: ") + e.what());
  }
  CheckDominatingSetShape(b.header);
  if (j.contains("hash")) {
    const auto claimed = FixedFromHex<32>(j.at("hash").get<std::string>(), "hash");
    if (claimed != b.Hash()) Malformed("hash: does not match header");
  }
  return b;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path + ": " + e.what());
  }
}

void WriteJsonFile(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << j.dump(2) << '\n';
}

Block LoadBlockJson(const std::string& path) {
  return BlockFromJson(ReadJsonFile(path));
}

void SaveBlockJson(const Block& block, const std::string& path) {
  WriteJsonFile(BlockToJson(block), path);
}

json CommitteeToJson(const Committee& committee) {
  json members = json::array();
  for (const auto& pk : committee.members) members.push_back(ToHex(pk));
  return {{"threshold", committee.threshold}, {"members", members}};
}

Committee CommitteeFromJson(const json& j) {
  Committee c;
  try {
    c.threshold = j.at("threshold").get<uint32_t>();
    for (const auto& m : j.at("members")) {
      const auto& hex = m.is_object() ? m.at("pk") : m;
      c.members.push_back(FixedFromHex<32>(hex.get<std::string>(), "pk"));
    }
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("committee: ") + e.what());
  }
  return c;
}

json CommitteeKeysToJson(const CommitteeKeys& keys) {
  json members = json::array();
  for (size_t i = 0; i < keys.secret_keys.size(); ++i) {
    members.push_back({{"pk", ToHex(keys.committee.members[i])},
                       {"sk", ToHex(keys.secret_keys[i])}});
  }
  return {{"threshold", keys.committee.threshold}, {"members", members}};
}

CommitteeKeys CommitteeKeysFromJson(const json& j) {
  CommitteeKeys keys;
  keys.committee = CommitteeFromJson(j);
  try {
    for (const auto& m : j.at("members")) {
      keys.secret_keys.push_back(
          FixedFromHex<64>(m.at("sk").get<std::string>(), "sk"));
    }
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("committee keys: ") + e.what());
  }
  return keys;
}

json InstanceToJson(const ProblemInstance& inst, const std::string& graph_path) {
  return {{"id_g", inst.id_g},
          {"digest", ToHex(inst.digest)},
          {"sigs", SignaturesToJson(inst.sigs)},
          {"graph", graph_path}};
}

ProblemInstance LoadInstance(const std::string& sidecar_path,
                             const Committee& committee) {
  const json j = ReadJsonFile(sidecar_path);
  ProblemInstance inst;
  std::filesystem::path graph_path;
  try {
    inst.id_g = j.at("id_g").get<uint64_t>();
    inst.digest = HashFromHex(j.at("digest").get<std::string>());
    inst.sigs = SignaturesFromJson(j.at("sigs"));
    graph_path = j.at("graph").get<std::string>();
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kMalformedInstance,
                sidecar_path + ": " + e.what());
  }
  if (graph_path.is_relative()) {
    graph_path = std::filesystem::path(sidecar_path).parent_path() / graph_path;
  }
  inst.graph = std::make_shared<const Graph>(LoadGraph(graph_path.string()));
  inst.committee = committee;
  return inst;
}

}  // namespace chrisimos
