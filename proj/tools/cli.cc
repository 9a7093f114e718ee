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
#include "cli.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bench_report.h"
#include "chrisimos/chain_select.h"
#include "chrisimos/error.h"
#include "chrisimos/graph.h"
#include "chrisimos/ledger.h"
#include "chrisimos/mining.h"
#include "chrisimos/simnet.h"
#include "chrisimos/timing_table.h"
#include "chrisimos/transform.h"
#include "chrisimos/verification.h"

namespace chrisimos::cli {
namespace {

using nlohmann::json;

struct Globals {
  int lambda = kDefaultLambda;
  double l = kDefaultIntervalFactor;
  uint32_t f = kDefaultCheckpointDepth;
  uint64_t seed = 1;
  std::string format = "text";
  std::string committee;
};

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  file << content;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

std::string JoinIds(const std::vector<VertexId>& ids) {
  std::string s;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(ids[i]);
  }
  return s;
}

Hash256 ParseHash(const std::string& hex, const char* flag) {
  try {
    return HashFromHex(hex);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + " must be 64 hex characters");
  }
}

Committee RequireCommittee(const Globals& g) {
  if (g.committee.empty()) {
    throw UsageError("--committee is required (flag or config key 'committee')");
  }
  return CommitteeFromJson(ReadJsonFile(g.committee));
}

GraphModel ParseModel(const std::string& name, uint32_t m_attach, double p) {
  if (name == "ba") return BarabasiAlbert{m_attach};
  if (name == "er") return ErdosRenyi{p};
  throw UsageError("--model must be 'ba' or 'er'");
}

TransactionSet MakeTxs(const std::string& coinbase,
                       const std::vector<std::string>& payloads) {
  TransactionSet txs;
  txs.coinbase = Transaction::FromString(coinbase);
  for (const auto& p : payloads) txs.others.push_back(Transaction::FromString(p));
  return txs;
}

std::string FormatDouble(double x) {
  std::ostringstream s;
  s.precision(9);
  s << x;
  return s.str();
}

}  // namespace

int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Chrisimos proof-of-useful-work laboratory", "chrisimos"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.set_config("--config", "", "Key-value config file (TOML/INI style)")
      ->envname("CHRISIMOS_CONFIG");
  app.add_option("--lambda", g.lambda, "Seed length in bits")
      ->check(CLI::Range(1, 256));
  app.add_option("--l", g.l, "Block interval factor, l > 1");
  app.add_option("--f", g.f, "Checkpoint depth");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--committee", g.committee, "Committee key file (JSON)");

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "Generate a synthetic instance");
  std::string model = "ba", gen_out;
  uint32_t gen_n = 1000, m_attach = 2;
  double p_edge = 0.01;
  gen->add_option("--model", model, "ba or er");
  gen->add_option("--n", gen_n, "Vertex count")->required();
  gen->add_option("--m-attach", m_attach, "Barabasi-Albert attachment count");
  gen->add_option("--p", p_edge, "Erdos-Renyi edge probability");
  gen->add_option("--out", gen_out, "Edge-list path (stdout if absent)");

  // extend
  auto* ext = app.add_subcommand("extend", "Dump the extended graph G_T");
  std::string graph_path, prev_hex, mr_hex, coinbase = "coinbase", ext_out;
  ext->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  ext->add_option("--prev-hash", prev_hex)->required();
  auto* ext_mr = ext->add_option("--h-mr", mr_hex, "Merkle root (hex)");
  ext->add_option("--coinbase", coinbase, "Coinbase payload used when --h-mr is absent")
      ->excludes(ext_mr);
  ext->add_option("--out", ext_out);

  // solve
  auto* solve = app.add_subcommand("solve", "Greedy dominating set of G or G_T");
  std::string solve_prev;
  bool brute = false;
  solve->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  solve->add_option("--prev-hash", solve_prev, "Extend first with this parent hash");
  solve->add_option("--coinbase", coinbase);
  solve->add_flag("--brute", brute, "Exact search (n <= 20, G only)");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Seeded committee keys");
  uint32_t members = 4, threshold = 3;
  std::string keys_out, public_out;
  keygen->add_option("--members", members);
  keygen->add_option("--threshold", threshold);
  keygen->add_option("--out", keys_out, "Key file with secrets")->required();
  keygen->add_option("--public-out", public_out, "Public committee file");

  // make-instance
  auto* mkinst = app.add_subcommand("make-instance", "Committee-signed instance sidecar");
  std::string keys_path, inst_out;
  uint64_t inst_id = 1;
  uint32_t signers = 0;
  mkinst->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  mkinst->add_option("--keys", keys_path)->required()->check(CLI::ExistingFile);
  mkinst->add_option("--id", inst_id)->required();
  mkinst->add_option("--signers", signers, "Members that sign (default threshold)");
  mkinst->add_option("--out", inst_out)->required();

  // mine
  auto* mine = app.add_subcommand("mine", "Mine a block for an instance");
  std::string inst_path, block_out;
  std::string mine_prev = ToHex(MakeGenesis().Hash());
  uint64_t prev_id = 0;
  std::optional<uint64_t> budget_ms;
  uint32_t restarts = 0;
  std::vector<std::string> tx_payloads;
  mine->add_option("--instance", inst_path)->required()->check(CLI::ExistingFile);
  mine->add_option("--prev-hash", mine_prev, "Parent block hash (default genesis)");
  mine->add_option("--prev-id", prev_id, "Instance id of the parent block");
  mine->add_option("--coinbase", coinbase);
  mine->add_option("--tx", tx_payloads, "Extra transaction payloads");
  mine->add_option("--budget-ms", budget_ms, "Wall-clock budget");
  mine->add_option("--restarts", restarts, "Seeded greedy restarts");
  mine->add_option("--out", block_out);

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a block against an instance");
  std::string block_path;
  std::string verify_prev = ToHex(MakeGenesis().Hash());
  uint64_t verify_prev_id = 0;
  std::optional<uint64_t> past_size;
  verify->add_option("--block", block_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--instance", inst_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--prev-hash", verify_prev, "Tip hash (default genesis)");
  verify->add_option("--prev-id", verify_prev_id, "Tip instance id");
  verify->add_option("--past-size", past_size, "Best set size seen this epoch");

  // retrieve
  auto* retrieve = app.add_subcommand("retrieve", "Map a block's set back to G");
  retrieve->add_option("--block", block_path)->required()->check(CLI::ExistingFile);
  retrieve->add_option("--instance", inst_path)->required()->check(CLI::ExistingFile);

  // bench
  auto* bench = app.add_subcommand("bench", "Generation vs verification timing");
  std::vector<uint32_t> sizes;
  std::vector<uint64_t> seeds = {1};
  uint32_t repeats = 3;
  std::string bench_out, table_out;
  bench->add_option("--sizes", sizes, "Vertex counts")->delimiter(',');
  bench->add_option("--model", model);
  bench->add_option("--m-attach", m_attach);
  bench->add_option("--p", p_edge);
  bench->add_option("--seeds", seeds)->delimiter(',');
  bench->add_option("--repeats", repeats);
  bench->add_option("--out", bench_out, "CSV path (stdout if absent)");
  bench->add_option("--table-out", table_out, "Also write a lookup table");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate T_max from a lookup table");
  std::string table_path;
  std::optional<uint32_t> est_n, est_delta;
  std::optional<uint64_t> est_m;
  estimate->add_option("--table", table_path)->required()->check(CLI::ExistingFile);
  auto* est_graph = estimate->add_option("--graph", graph_path)->check(CLI::ExistingFile);
  estimate->add_option("--n", est_n)->excludes(est_graph);
  estimate->add_option("--m", est_m)->excludes(est_graph);
  estimate->add_option("--delta", est_delta)->excludes(est_graph);

  // chain-select
  auto* chain = app.add_subcommand("chain-select", "Fork choice between two chains");
  std::string current_path, candidate_path;
  std::vector<std::string> inst_paths;
  chain->add_option("--current", current_path)->required()->check(CLI::ExistingFile);
  chain->add_option("--candidate", candidate_path)->required()->check(CLI::ExistingFile);
  chain->add_option("--instance", inst_paths, "Instance sidecars")->check(CLI::ExistingFile);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a scripted multi-miner scenario");
  std::string scenario = "honest", sim_out;
  SimConfig sim_cfg;
  sim->add_option("--scenario", scenario);
  sim->add_option("--miners", sim_cfg.miners)->check(CLI::PositiveNumber);
  sim->add_option("--epochs", sim_cfg.epochs);
  sim->add_option("--n", sim_cfg.n);
  sim->add_option("--delta-net", sim_cfg.delta_net, "Max message delay in ticks");
  sim->add_option("--out", sim_out, "Report path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!(g.l > 1.0)) throw UsageError("--l must be greater than 1");

    if (*gen) {
      const Graph graph = GenerateGraph(ParseModel(model, m_attach, p_edge), gen_n, g.seed);
      Emit(gen_out, GraphToText(graph), out);
      if (!gen_out.empty()) {
        out << "n=" << graph.order() << " m=" << graph.size()
            << " delta=" << graph.min_degree() << " gamma=" << graph.max_degree() << '\n';
      }
      return kExitOk;
    }

    if (*ext) {
      auto graph = std::make_shared<const Graph>(LoadGraph(graph_path));
      const Hash256 h_mr = mr_hex.empty() ? MerkleRoot(MakeTxs(coinbase, {}))
                                          : ParseHash(mr_hex, "--h-mr");
      const ExtendedGraph eg = ExtendedGraph::Extend(
          graph, ParseHash(prev_hex, "--prev-hash"), h_mr, g.lambda);
      if (g.format == "json") {
        json adj = json::object();
        for (VertexId v = 1; v <= eg.order(); ++v) adj[std::to_string(v)] = eg.Neighbors(v);
        Emit(ext_out,
             Dump({{"n_t", eg.order()}, {"m_t", eg.size()}, {"delta_t", eg.min_degree()},
                   {"delta_hat", eg.w_spec().delta_hat()}, {"adjacency", adj}}),
             out);
      } else {
        Emit(ext_out, GraphToText(eg.Materialize()), out);
      }
      return kExitOk;
    }

    if (*solve) {
      auto graph = std::make_shared<const Graph>(LoadGraph(graph_path));
      DominatingSet ds;
      double bound = 0;
      uint32_t n_t = graph->order();
      if (solve_prev.empty()) {
        ds = brute ? BruteMinDominatingSet(*graph) : GreedyDominatingSet(*graph);
        bound = ComputeBound(graph->order(), graph->min_degree());
      } else {
        if (brute) throw UsageError("--brute works on G only");
        const ExtendedGraph eg = ExtendedGraph::Extend(
            graph, ParseHash(solve_prev, "--prev-hash"),
            MerkleRoot(MakeTxs(coinbase, {})), g.lambda);
        ds = GreedyDominatingSet(eg);
        bound = ComputeBound(eg.order(), eg.min_degree());
        n_t = eg.order();
      }
      if (g.format == "json") {
        out << Dump({{"vertices", ds.vertices}, {"size", ds.size()},
                     {"bound", bound}, {"order", n_t}});
      } else {
        out << "size " << ds.size() << " bound " << FormatDouble(bound) << '\n'
            << JoinIds(ds.vertices) << '\n';
      }
      return kExitOk;
    }

    if (*keygen) {
      const CommitteeKeys keys = CommitteeKeys::Generate(members, threshold, g.seed);
      WriteJsonFile(CommitteeKeysToJson(keys), keys_out);
      if (!public_out.empty()) WriteJsonFile(CommitteeToJson(keys.committee), public_out);
      return kExitOk;
    }

    if (*mkinst) {
      const CommitteeKeys keys = CommitteeKeysFromJson(ReadJsonFile(keys_path));
      auto graph = std::make_shared<const Graph>(LoadGraph(graph_path));
      const ProblemInstance inst = ProblemInstance::Create(
          inst_id, graph, keys, signers == 0 ? keys.committee.threshold : signers);
      WriteJsonFile(InstanceToJson(inst, graph_path), inst_out);
      return kExitOk;
    }

    if (*mine) {
      const ProblemInstance inst = LoadInstance(inst_path, RequireCommittee(g));
      SteadyClock clock;
      GreedySolver solver(restarts, g.seed);
      MineOptions options;
      options.lambda = g.lambda;
      options.prev_id_g = prev_id;
      options.deadline = budget_ms ? *budget_ms * 1000 : std::numeric_limits<uint64_t>::max();
      const MineResult r = MineBlock(inst, MakeTxs(coinbase, tx_payloads),
                                     ParseHash(mine_prev, "--prev-hash"), solver,
                                     clock, options);
      if (!r.block) {
        err << MineOutcomeName(r.outcome) << ": " << r.detail << '\n';
        return kExitReject;
      }
      Emit(block_out, Dump(BlockToJson(*r.block)), out);
      if (!block_out.empty()) {
        out << "block " << ToHex(r.block->Hash()) << " |ds|=" << r.block->header.ds.size()
            << " bound=" << FormatDouble(r.bound_k) << '\n';
      }
      return kExitOk;
    }

    if (*verify) {
      const Block block = LoadBlockJson(block_path);
      const ProblemInstance inst = LoadInstance(inst_path, RequireCommittee(g));
      EpochVerifierState state = EpochVerifierState::Start(
          *inst.graph, std::numeric_limits<uint64_t>::max());
      if (past_size) state.past_size_ds = *past_size;
      VerifyContext ctx;
      ctx.h_prev = ParseHash(verify_prev, "--prev-hash");
      ctx.prev_id_g = verify_prev_id;
      ctx.lambda = g.lambda;
      const VerifyResult r = VerifyBlock(block, inst, ctx, state);
      if (g.format == "json") {
        out << Dump({{"accepted", r.accepted},
                     {"reason", RejectReasonName(r.reason)},
                     {"detail", r.detail},
                     {"adjacency_cells", r.adjacency_cells}});
      } else if (r.accepted) {
        out << "Accept\n";
      } else {
        out << "Reject(" << RejectReasonName(r.reason) << ")\n";
        err << r.detail << '\n';
      }
      return r.accepted ? kExitOk : kExitReject;
    }

    if (*retrieve) {
      const Block block = LoadBlockJson(block_path);
      const ProblemInstance inst = LoadInstance(inst_path, RequireCommittee(g));
      const DominatingSet ds = RetrieveDominatingSetOfG(block, inst, g.lambda);
      if (g.format == "json") {
        out << Dump({{"vertices", ds.vertices}, {"size", ds.size()}});
      } else {
        out << JoinIds(ds.vertices) << '\n';
      }
      return kExitOk;
    }

    if (*bench) {
      BenchOptions options;
      options.sizes = sizes;
      options.model = ParseModel(model, m_attach, p_edge);
      options.seeds = seeds;
      options.repeats = repeats;
      options.lambda = g.lambda;
      const std::vector<BenchRow> rows = RunBench(options);
      const std::string tag = HardwareTag();
      std::ostringstream csv;
      WriteBenchCsv(rows, tag, csv);
      Emit(bench_out, csv.str(), out);
      if (!table_out.empty()) {
        LookupTable table;
        table.hardware_tag = tag;
        for (const BenchRow& r : rows) {
          const Graph sample = GenerateGraph(options.model, r.n, seeds.front());
          table.entries.push_back(
              {r.n, r.m, sample.min_degree(), r.gen_seconds + r.verify_seconds});
        }
        SaveTable(table, table_out);
      }
      return kExitOk;
    }

    if (*estimate) {
      const LookupTable table = LoadTable(table_path);
      uint32_t n = 0, delta = 0;
      uint64_t m = 0;
      if (!graph_path.empty()) {
        const Graph graph = LoadGraph(graph_path);
        n = graph.order();
        m = graph.size();
        delta = graph.min_degree();
      } else if (est_n && est_m && est_delta) {
        n = *est_n;
        m = *est_m;
        delta = *est_delta;
      } else {
        throw UsageError("estimate needs --graph or all of --n, --m, --delta");
      }
      const double tmax = EstimateTmax(table, n, m, delta, g.l);
      if (g.format == "json") {
        out << Dump({{"t_max_s", tmax}, {"entry_n", PickEntry(table, n).n},
                     {"hardware", table.hardware_tag}});
      } else {
        out << FormatDouble(tmax) << '\n';
      }
      return kExitOk;
    }

    if (*chain) {
      InstanceBook book;
      if (!inst_paths.empty()) {
        const Committee committee = RequireCommittee(g);
        for (const auto& p : inst_paths) {
          ProblemInstance inst = LoadInstance(p, committee);
          book[inst.id_g] = std::move(inst);
        }
      }
      uint32_t f_current = g.f, f_candidate = g.f;
      auto current_blocks = ChainBlocksFromJson(ReadJsonFile(current_path), &f_current);
      auto candidate_blocks = ChainBlocksFromJson(ReadJsonFile(candidate_path), &f_candidate);
      const ChainView current = ChainView::Build(std::move(current_blocks), g.f, book);
      const ChainView candidate = ChainView::Build(std::move(candidate_blocks), g.f, book);
      SelectOptions options;
      options.tie_seed = g.seed;
      options.lambda = g.lambda;
      const SelectResult r = SelectChain(current, candidate, book, options);
      if (g.format == "json") {
        out << Dump({{"adopt_candidate", r.adopt_candidate},
                     {"fork_height", r.fork_height},
                     {"current_work", r.current_work},
                     {"candidate_work", r.candidate_work},
                     {"tie", r.tie},
                     {"trace", r.trace}});
      } else {
        for (const auto& line : r.trace) out << line << '\n';
        out << (r.adopt_candidate ? "adopt candidate" : "keep current") << '\n';
      }
      return kExitOk;
    }

    if (*sim) {
      sim_cfg.seed = g.seed;
      sim_cfg.f = g.f;
      sim_cfg.l = g.l;
      sim_cfg.lambda = g.lambda;
      const SimReport report = RunScenario(scenario, sim_cfg);
      Emit(sim_out, Dump(report.ToJson()), out);
      if (!sim_out.empty()) {
        out << report.scenario << ": " << report.outcome << '\n';
      }
      return report.outcome_ok ? kExitOk : kExitReject;
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace chrisimos::cli
