// mltc: encode, decode, repair and inspect multi-layer transformed codes.
//
// Exit codes: 0 ok, 1 I/O or internal error, 2 parameter error,
// 3 integrity error (including a failed MDS check), 4 insufficient shards.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mltc/errors.hpp"
#include "mltc/multilayer.hpp"
#include "mltc/report.hpp"
#include "mltc/storage.hpp"
#include "mltc/verify.hpp"

using namespace mltc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParam = 2, kIntegrity = 3, kInsufficient = 4 };

struct CodeFlags {
  int n = 0;
  int k = 0;
  int d = 0;
  std::string mode = "gf8";
  int p = 0;
  std::uint64_t seed = 1;
  int layers = 0;
  std::optional<Symbol> force_coupling;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Total nodes")->required();
    app->add_option("--k", k, "Data nodes")->required();
    app->add_option("--d", d, "Helpers per repair")->required();
    app->add_option("--mode", mode, "Symbol algebra")->check(CLI::IsMember({"gf8", "gf16", "ring"}));
    app->add_option("--p", p, "Ring modulus (ring mode)");
    app->add_option("--seed", seed, "Coefficient seed");
    app->add_option("--layers", layers, "Apply only the first layers (0 = all)");
    app->add_option("--force-coupling", force_coupling, "Use this value for every coefficient (testing)")
        ->group("Testing");
  }

  CodeConfig config() const {
    CodeConfig c;
    c.n = n;
    c.k = k;
    c.d = d;
    c.mode = parse_mode(mode);
    c.p = p;
    c.seed = seed;
    c.layers = layers;
    c.forced_coupling = force_coupling;
    if (c.mode == AlgebraKind::Ring && p == 0) throw ParameterError("ring mode needs --p");
    return c;
  }
};

std::string nodes1(const std::vector<int>& v) {
  std::string s;
  for (int h : v) s += (s.empty() ? "" : ",") + std::to_string(h + 1);
  return "{" + s + "}";
}

json nodes1_json(const std::vector<int>& v) {
  json a = json::array();
  for (int h : v) a.push_back(h + 1);
  return a;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v * 100);
  return buf;
}

int cmd_encode(const std::string& input, const std::string& out, const CodeFlags& cf, bool as_json) {
  const CodeConfig cfg = cf.config();
  const EncodeResult r = encode_file(input, out, cfg);
  if (as_json) {
    json j{{"n", cfg.n},
           {"k", cfg.k},
           {"d", cfg.d},
           {"alpha", r.alpha},
           {"stripes", r.stripes},
           {"data_length", r.data_length},
           {"padding_bytes", r.padding_bytes},
           {"fingerprint", r.fingerprint},
           {"shards", json::array()}};
    for (const auto& s : r.shards) j["shards"].push_back(s.string());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "encoded " << r.data_length << " bytes into " << r.shards.size() << " shards under " << out << "\n"
              << "  alpha " << r.alpha << ", " << r.stripes << " stripes, " << r.padding_bytes << " padding bytes\n"
              << "  fingerprint " << r.fingerprint << "\n";
  }
  return kOk;
}

int cmd_decode(const std::string& dir, const std::string& out, bool as_json) {
  const DecodeResult r = decode_file(dir, out);
  if (as_json) {
    std::cout << json{{"nodes", nodes1_json(r.nodes)}, {"grouped", r.grouped}, {"bytes", r.bytes}}.dump(2) << "\n";
  } else {
    std::cout << "decoded " << r.bytes << " bytes from shards " << nodes1(r.nodes)
              << (r.grouped ? " (group peeling)" : " (dense solve)") << " -> " << out << "\n";
  }
  return kOk;
}

int cmd_repair(const std::string& dir, int node, const std::string& out, bool as_json) {
  std::optional<fs::path> target;
  if (!out.empty()) target = out;
  const RepairTrace t = repair_shard(dir, node - 1, target);
  if (as_json) {
    json per = json::array();
    for (std::size_t i = 0; i < t.helpers.size(); ++i)
      per.push_back({{"node", t.helpers[i] + 1}, {"symbols", t.symbols_per_helper[i]}});
    std::cout << json{{"failed", t.failed + 1},
                      {"helpers", per},
                      {"symbols_per_stripe", t.total_symbols},
                      {"baseline_symbols_per_stripe", t.baseline_symbols},
                      {"savings", t.savings},
                      {"optimal", t.optimal},
                      {"stripes", t.stripes},
                      {"symbol_bytes", t.symbol_bytes},
                      {"bytes_read", t.bytes_read},
                      {"output", t.output.string()}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "rebuilt node " << t.failed + 1 << " -> " << t.output.string() << "\n";
  std::cout << "  helper  symbols/stripe\n";
  for (std::size_t i = 0; i < t.helpers.size(); ++i) std::printf("  %6d  %14llu\n", t.helpers[i] + 1, static_cast<unsigned long long>(t.symbols_per_helper[i]));
  std::cout << "  total " << t.total_symbols << " vs baseline " << t.baseline_symbols << " (" << pct(t.savings)
            << " saved" << (t.optimal ? "" : ", no optimal plan for this node") << ")\n"
            << "  bytes read " << t.bytes_read << " over " << t.stripes << " stripes\n";
  return kOk;
}

int cmd_verify(const CodeFlags& cf, std::uint64_t budget, int threads, bool as_json) {
  const CodeConfig cfg = cf.config();
  VerifyOptions vo;
  vo.budget = budget;
  vo.threads = threads;
  const CodeParams p = derive_params(cfg.n, cfg.k, cfg.d, cfg.layers);
  std::optional<MultiLayerCode> code;
  std::optional<MdsReport> rep;
  std::string selection_error;
  try {
    code.emplace(cfg.build(vo));
    rep = code->mds_report();
  } catch (const SelectionError& e) {
    selection_error = e.what();
  }
  const BoundRow b = bound_row(p.n, p.k, p.eta, p.t);
  const bool pass = rep && rep->pass();
  if (as_json) {
    json j{{"n", p.n}, {"k", p.k}, {"d", p.d}, {"t", p.t}, {"eta", p.eta}, {"layers", p.layers}, {"alpha", p.alpha},
           {"field_size_bound", b.bound}, {"pass", pass}};
    if (!b.note.empty()) j["bound_note"] = b.note;
    if (code) {
      j["fingerprint"] = code->fingerprint();
      j["attempts"] = code->selection_attempts();
      json e = json::array();
      for (Symbol v : code->coupling().values) e.push_back(v);
      j["coupling"] = e;
    }
    if (rep) {
      j["total_subsets"] = rep->total_subsets;
      j["checked"] = rep->checked;
      j["skipped"] = rep->skipped;
      j["complete"] = rep->complete;
      j["elapsed_seconds"] = rep->elapsed_seconds;
      if (rep->first_failure) j["witness"] = nodes1_json(*rep->first_failure);
    }
    if (!selection_error.empty()) j["error"] = selection_error;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "(" << p.n << "," << p.k << "," << p.d << ") " << cfg.algebra().name() << ": t " << p.t << ", eta "
              << p.eta << ", " << p.layers << " layers, alpha " << p.alpha << "\n";
    std::cout << "  field-size bound " << b.bound << (b.note.empty() ? "" : "  [" + b.note + "]") << "\n";
    if (rep) {
      std::cout << "  exhaustive: " << rep->checked << " rank checks, " << rep->skipped << " grouped subsets skipped, "
                << rep->total_subsets << " total" << (rep->complete ? "" : " (budget reached)") << "\n";
      if (rep->first_failure) std::cout << "  FAIL: nodes " << nodes1(*rep->first_failure) << " cannot decode\n";
      else std::cout << (pass ? "  PASS\n" : "  INCOMPLETE\n");
    } else {
      std::cout << "  FAIL: " << selection_error << "\n";
    }
  }
  return pass ? kOk : kIntegrity;
}

int cmd_report(const std::vector<std::string>& specs, bool as_json) {
  std::vector<std::vector<int>> rows;
  for (const auto& s : specs) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        v.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw ParameterError("bad parameter triple '" + s + "' (expected n,k,d)");
      }
    }
    if (v.size() != 3) throw ParameterError("bad parameter triple '" + s + "' (expected n,k,d)");
    rows.push_back(v);
  }
  if (rows.empty()) rows = default_report_params();

  json out = json::array();
  if (!as_json)
    std::printf("%-12s %4s %4s %4s %8s %12s %8s %8s %8s  %s\n", "(n,k,d)", "t", "eta", "L", "alpha", "baseline", "access",
                "rs", "saved", "notes");
  for (const auto& v : rows) {
    const ReportRow r = report_row(v[0], v[1], v[2]);
    std::string notes = r.note;
    if (!r.suboptimal_nodes.empty())
      notes += std::string(notes.empty() ? "" : "; ") + "nodes " + nodes1(r.suboptimal_nodes) + " have no optimal plan";
    if (as_json) {
      json j{{"n", r.n}, {"k", r.k}, {"d", r.d}, {"t", r.t}, {"eta", r.eta}, {"layers", r.layers}, {"alpha", r.alpha},
             {"repair_access", r.repair_access}, {"rs_access", r.rs_access}, {"savings", r.savings},
             {"plans_checked", r.plans_checked}, {"suboptimal_nodes", nodes1_json(r.suboptimal_nodes)}};
      j["baseline_alpha"] = r.baseline_overflow ? json(nullptr) : json(r.baseline_alpha);
      if (!r.note.empty()) j["note"] = r.note;
      out.push_back(j);
    } else {
      const std::string tag = "(" + std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.d) + ")";
      const std::string base = r.baseline_overflow ? ">2^64" : std::to_string(r.baseline_alpha);
      std::printf("%-12s %4d %4d %4d %8llu %12s %8llu %8llu %8s  %s\n", tag.c_str(), r.t, r.eta, r.layers,
                  static_cast<unsigned long long>(r.alpha), base.c_str(), static_cast<unsigned long long>(r.repair_access),
                  static_cast<unsigned long long>(r.rs_access), pct(r.savings).c_str(), notes.c_str());
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_plan(const CodeFlags& cf, int node, bool as_json) {
  const CodeConfig cfg = cf.config();
  BuildOptions bo;
  bo.layers = cfg.layers;
  bo.verify = false;  // plans only depend on the layout
  const MultiLayerCode code = MultiLayerCode::build(cfg.algebra(), cfg.n, cfg.k, cfg.d, cfg.seed, bo);
  const CodeParams& p = code.params();
  std::vector<int> nodes;
  if (node > 0) {
    if (node > p.n) throw ParameterError("node must be in [1, " + std::to_string(p.n) + "]");
    nodes.push_back(node - 1);
  } else {
    for (int x = 0; x < p.n; ++x) nodes.push_back(x);
  }
  json out = json::array();
  for (int x : nodes) {
    const RepairPlan plan = code.plan_repair(x);
    std::vector<std::string> steps;
    for (const auto& s : plan.steps) steps.push_back(s.describe());
    if (as_json) {
      json j{{"node", x + 1},
             {"helpers", nodes1_json(plan.helpers)},
             {"rows", nodes1_json(plan.rows)},
             {"providers", nodes1_json(plan.providers)},
             {"symbols_read", plan.symbols_read()},
             {"optimal_access", p.optimal_access()},
             {"optimal", plan.optimal},
             {"conventional", plan.conventional},
             {"steps", steps}};
      if (plan.address) j["layer"] = plan.address->layer;
      out.push_back(j);
    } else {
      std::cout << "node " << x + 1;
      if (plan.address)
        std::cout << " (layer " << plan.address->layer << ", group " << plan.address->group + 1 << ", offset "
                  << plan.address->offset + 1 << ")";
      std::cout << ": helpers " << nodes1(plan.helpers) << ", rows " << nodes1(plan.rows) << ", "
                << plan.symbols_read() << " symbols" << (plan.optimal ? "" : " (not optimal, optimum " +
                                                                           std::to_string(p.optimal_access()) + ")")
                << "\n";
      for (const auto& s : steps) std::cout << "    " << s << "\n";
    }
  }
  if (as_json) std::cout << (node > 0 ? out[0] : out).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-layer transformed MDS codes with optimal repair access"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output")->configurable(false);

  std::string input, out, dir;
  int node = 0;
  std::uint64_t budget = 1'000'000;
  int threads = 0;
  std::vector<std::string> params;

  CodeFlags enc_flags, ver_flags, plan_flags;
  auto* enc = app.add_subcommand("encode", "Split a file into n shards");
  enc->add_option("input", input, "File to encode")->required()->check(CLI::ExistingFile);
  enc->add_option("--out", out, "Shard directory")->required();
  enc_flags.add(enc);

  auto* dec = app.add_subcommand("decode", "Rebuild the original file from any k shards");
  dec->add_option("dir", dir, "Shard directory")->required()->check(CLI::ExistingDirectory);
  dec->add_option("--out", out, "Output file")->required();

  auto* rep = app.add_subcommand("repair", "Rebuild one shard from its plan helpers");
  rep->add_option("dir", dir, "Shard directory")->required()->check(CLI::ExistingDirectory);
  rep->add_option("--node", node, "Failed node (1-based)")->required();
  rep->add_option("--out", out, "Output path (default: the shard's own file)");

  auto* ver = app.add_subcommand("verify", "Exhaustive MDS check next to the field-size bound");
  ver_flags.add(ver);
  ver->add_option("--budget", budget, "Maximum subsets to enumerate");
  ver->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* rpt = app.add_subcommand("report", "Sub-packetization and repair-traffic table");
  rpt->add_option("params", params, "Triples n,k,d (default: a built-in list)");

  auto* pln = app.add_subcommand("plan", "Print repair plans without executing them");
  plan_flags.add(pln);
  pln->add_option("--node", node, "Failed node (1-based, default: all)");

  for (auto* sub : {enc, dec, rep, ver, rpt, pln}) sub->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParam;
  }

  try {
    if (*enc) return cmd_encode(input, out, enc_flags, as_json);
    if (*dec) return cmd_decode(dir, out, as_json);
    if (*rep) return cmd_repair(dir, node, out, as_json);
    if (*ver) return cmd_verify(ver_flags, budget, threads, as_json);
    if (*rpt) return cmd_report(params, as_json);
    if (*pln) return cmd_plan(plan_flags, node, as_json);
  } catch (const InsufficientShards& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kInsufficient;
  } catch (const IntegrityError& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kIntegrity;
  } catch (const MdsViolation& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kIntegrity;
  } catch (const ParameterError& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kParam;
  } catch (const DomainError& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kParam;
  } catch (const ConstructionError& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kParam;
  } catch (const SelectionError& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kParam;
  } catch (const PlanError& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kParam;
  } catch (const std::exception& e) {
    std::cerr << "mltc: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
