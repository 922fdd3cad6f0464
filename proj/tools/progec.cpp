// progec: encode files into erasure-coded shards, plan and run single-node
// repairs, verify recoverability, search for code structures, and emit the
// CSV data behind the bandwidth/selection plots.
//
// Exit codes: 0 success, 1 verification or repair failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "progec/bench.hpp"
#include "progec/mds.hpp"
#include "progec/search.hpp"
#include "progec/select.hpp"
#include "progec/serialize.hpp"
#include "progec/shard.hpp"

namespace fs = std::filesystem;
using namespace progec;

namespace {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

NodeId parse_node(const std::string& text) {
  if (text.size() < 2 || (text[0] != 's' && text[0] != 'p'))
    throw CLI::ValidationError("--failed", "expected s<i> or p<j>, e.g. s1");
  const int idx = std::stoi(text.substr(1));
  if (idx < 1) throw CLI::ValidationError("--failed", "indices are 1-based");
  return {text[0] == 's' ? NodeRole::systematic : NodeRole::parity, idx - 1};
}

// "1,2,3" (1-based parity labels) -> sorted 0-based indices
std::vector<int> parse_parities(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const int v = std::stoi(item);
    if (v < 1) throw CLI::ValidationError("--parities", "parity labels are 1-based");
    out.push_back(v - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<int>> parse_shifts(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<int> cells;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) cells.push_back(std::stoi(cell));
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

PlanMethod parse_method(const std::string& text) {
  if (text == "exact") return PlanMethod::exact;
  if (text == "greedy") return PlanMethod::greedy;
  if (text == "two-phase" || text == "two_phase") return PlanMethod::two_phase;
  throw CLI::ValidationError("--method", "expected exact, greedy or two-phase");
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// stdout or file
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    auto out = open_out(out_path);
    out << text;
  }
}

struct Options {
  std::string spec_path;
  std::uint64_t seed = 1;
  int w = 8;
};

CodeSpec need_spec(const Options& opt) {
  if (opt.spec_path.empty()) throw CLI::ValidationError("--spec", "a spec file is required");
  return load_spec(opt.spec_path);
}

int cmd_make_spec(const Options& opt, const std::string& kind, int n, int k, int L,
                  const std::string& shifts_text, const std::string& lambdas_text, int budget,
                  const std::string& out_path) {
  CodeSpec spec;
  if (kind == "permutation") {
    spec = build_permutation_code(n, k, opt.w, opt.seed, budget);
  } else if (kind == "rs") {
    spec = build_rs_code(n, k, L, opt.w);
  } else if (kind == "rotation") {
    auto shifts = parse_shifts(shifts_text);
    if (shifts.empty()) throw CLI::ValidationError("--shifts", "rotation kind needs a shift table");
    LambdaTable lambdas;
    if (!lambdas_text.empty()) {
      for (const auto& row : parse_shifts(lambdas_text))
        lambdas.emplace_back(row.begin(), row.end());
      spec = build_rotation_code_shifts(n, k, L, shifts, lambdas, opt.w);
    } else {
      std::vector<RotationTable> rot;
      for (const auto& row : shifts) {
        RotationTable r;
        for (int l : row) r.push_back(rotation_perm(l, L));
        rot.push_back(std::move(r));
      }
      auto found = assign_lambdas(n, k, L, rot, opt.w, opt.seed, budget);
      if (!found) {
        std::cerr << "no workable coefficients within budget " << budget << "\n";
        return 1;
      }
      spec = build_rotation_code(n, k, L, std::move(rot), std::move(*found), opt.w);
    }
  } else {
    throw CLI::ValidationError("--kind", "expected rotation, permutation or rs");
  }
  save_spec(spec, out_path);
  std::cout << "wrote " << out_path << "  kind=" << to_string(spec.kind) << " n=" << spec.n
            << " k=" << spec.k << " L=" << spec.L << " w=" << spec.w << " hash=" << std::hex
            << spec_hash(spec) << std::dec << "\n";
  return 0;
}

int cmd_verify(const Options& opt) {
  auto spec = need_spec(opt);
  auto report = is_mds(spec);
  if (report.ok) {
    std::cout << "MDS: every " << spec.k << "-subset of " << spec.n << " nodes decodes\n";
    return 0;
  }
  std::cout << "NOT MDS: undecodable subset " << report.failing_names(spec.k) << "\n";
  return 1;
}

int cmd_encode(const Options& opt, const std::string& input, const std::string& out_dir) {
  auto spec = need_spec(opt);
  auto report = is_mds(spec);
  if (!report.ok) {
    std::cerr << "refusing to encode: spec is not MDS (subset " << report.failing_names(spec.k) << ")\n";
    return 1;
  }
  auto res = encode_file(spec, input, out_dir);
  std::cout << "encoded " << res.orig_len << " bytes into " << res.shards.size() << " shards ("
            << spec.L << " blocks x " << res.s << " symbols each) under " << out_dir << "\n";
  return 0;
}

void print_plan(const CodeSpec& spec, const RepairPlan& plan, bool full) {
  std::cout << "failed " << to_string(plan.failed) << "  method " << to_string(plan.method)
            << "  cost " << plan.cost << " blocks";
  if (plan.failed.role == NodeRole::systematic) {
    int p = 0;
    for (const auto& h : plan.helpers) p += h.role == NodeRole::parity;
    std::cout << "  bound " << rat_str(gamma_lower_bound(spec.L, spec.k, p));
  }
  std::cout << "\nhelpers";
  for (const auto& h : plan.helpers) std::cout << ' ' << to_string(h);
  std::cout << "\n";
  if (full) {
    std::cout << "downloads";
    for (const auto& d : plan.downloads) std::cout << ' ' << to_string(d.node) << '(' << d.row << ')';
    std::cout << "\n";
  }
}

int cmd_repair_plan(const Options& opt, const std::string& failed_text,
                    const std::string& parities_text, const std::string& method_text,
                    long long cap, bool full) {
  auto spec = need_spec(opt);
  const NodeId failed = parse_node(failed_text);
  RepairPlan plan;
  if (failed.role == NodeRole::parity) {
    plan = plan_parity_rebuild(spec, failed.index);
  } else {
    auto parities = parse_parities(parities_text);
    if (parities.empty()) {
      parities.resize(spec.m());
      std::iota(parities.begin(), parities.end(), 0);
    }
    const PlanMethod method =
        method_text.empty()
            ? (spec.kind == CodeKind::permutation ? PlanMethod::two_phase : PlanMethod::exact)
            : parse_method(method_text);
    switch (method) {
      case PlanMethod::two_phase: plan = plan_repair_permutation(spec, failed.index, parities); break;
      case PlanMethod::greedy: plan = plan_repair_greedy(spec, failed.index, parities); break;
      default: plan = plan_repair_exact(spec, failed.index, parities, cap); break;
    }
  }
  print_plan(spec, plan, full);
  return 0;
}

int cmd_repair(const Options& opt, const std::string& dir, const std::string& failed_text,
               const std::string& parities_text, const std::string& method_text, long long cap) {
  auto spec = need_spec(opt);
  const NodeId failed = parse_node(failed_text);
  auto parities = parse_parities(parities_text);
  if (parities.empty() && failed.role == NodeRole::systematic) {
    parities.resize(spec.m());
    std::iota(parities.begin(), parities.end(), 0);
  }
  std::optional<PlanMethod> method;
  if (!method_text.empty()) method = parse_method(method_text);
  auto res = repair_file(spec, dir, failed, parities, method, cap);
  std::cout << "rebuilt " << to_string(failed) << " -> " << res.shard.string() << "\n"
            << "plan " << to_string(res.plan.method) << "  blocks read " << res.blocks_read
            << "  bytes read " << res.bytes_read;
  if (failed.role == NodeRole::systematic)
    std::cout << "  bound " << rat_str(gamma_lower_bound(spec.L, spec.k, int(parities.size())));
  std::cout << "\n";
  return 0;
}

int cmd_profile(const Options& opt, const std::string& method_text, long long cap,
                const std::string& out_path) {
  auto spec = need_spec(opt);
  const PlanMethod method =
      method_text.empty()
          ? (spec.kind == CodeKind::permutation ? PlanMethod::two_phase : PlanMethod::exact)
          : parse_method(method_text);
  auto prof = bandwidth_profile(spec, method, cap);
  std::ostringstream os;
  os << "p,gamma_bar,gamma_min,gamma_rs\n";
  for (int p = 1; p <= spec.m(); ++p)
    os << p << ',' << rat_str(prof.gamma_bar[p - 1]) << ','
       << rat_str(gamma_lower_bound(spec.L, spec.k, p)) << ',' << (long long)spec.k * spec.L
       << "\n";
  emit(os.str(), out_path);
  if (!out_path.empty()) {
    auto rep = check_progressive(prof);
    std::cout << "profile (" << to_string(method) << ") -> " << out_path << "  progressive="
              << (rep.progressive ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_search(const Options& opt, int n, int k, int L, bool no_symmetry, int budget,
               long long cap, std::size_t limit, const std::string& out_dir) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.L = L;
  cfg.w = opt.w;
  cfg.symmetry = !no_symmetry;
  cfg.lambda_seed = opt.seed;
  cfg.lambda_budget = budget;
  cfg.exact_cap = cap;
  auto results = dedupe_equivalent(search_rotation_codes(cfg));
  if (limit && results.size() > limit) results.resize(limit);

  const long long total = CandidateSpace(cfg).size();
  std::cout << "scanned " << total << " candidates, kept " << results.size()
            << " progressive codes\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ostringstream os;
    os << "candidate,progressive,planner";
    for (int p = 1; p <= n - k; ++p) os << ",gamma_bar_" << p;
    os << "\n";
    for (const auto& r : results) {
      os << r.index << ",1," << to_string(r.profile.method);
      for (const auto& g : r.profile.gamma_bar) os << ',' << rat_str(g);
      os << "\n";
      save_spec(r.spec, (fs::path(out_dir) / ("cand_" + std::to_string(r.index) + ".json")).string());
    }
    auto out = open_out(fs::path(out_dir) / "results.csv");
    out << os.str();
  }
  for (std::size_t i = 0; i < results.size() && i < 5; ++i) {
    std::cout << "  #" << results[i].index << " gamma_bar";
    for (const auto& g : results[i].profile.gamma_bar) std::cout << ' ' << rat_str(g);
    std::cout << "\n";
  }
  return 0;
}

int cmd_select(const Options& opt, const std::string& costs_text, const std::string& weights_text,
               const std::string& gamma_perm, bool raw, bool csv) {
  CostRow costs = parse_doubles(costs_text);
  if (costs.empty()) throw CLI::ValidationError("--costs", "need at least one cost");

  std::function<double(int)> gamma;
  int gn = 0, gk = 0;
  if (!gamma_perm.empty()) {
    auto nk = parse_doubles(gamma_perm);
    if (nk.size() != 2) throw CLI::ValidationError("--gamma-perm", "expected n,k");
    gn = int(nk[0]), gk = int(nk[1]);
    if (gn - gk != int(costs.size()))
      throw CLI::ValidationError("--gamma-perm", "n-k must match the cost count");
    gamma = [gn, gk](int p) { return double(gamma_permutation(gn, gk, p)); };
  } else {
    auto spec = need_spec(opt);
    if (spec.m() != int(costs.size()))
      throw CLI::ValidationError("--costs", "cost count must equal the spec's parity count");
    const PlanMethod method =
        spec.kind == CodeKind::permutation ? PlanMethod::two_phase : PlanMethod::exact;
    auto prof = bandwidth_profile(spec, method);
    gamma = [prof](int p) {
      return boost::rational_cast<double>(prof.gamma_bar[p - 1]);
    };
  }

  auto wvals = parse_doubles(weights_text);
  if (wvals.size() != 2) throw CLI::ValidationError("--weights", "expected accessing,bandwidth");
  Weights w{wvals[0], wvals[1]};

  const auto norm = raw ? Normalization::raw : Normalization::normalized;
  auto res = select_helpers(costs, gamma, w, norm);

  if (csv) {
    // per-p components under the same scaling as the optimizer
    std::vector<int> order(costs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[a] < costs[b]; });
    double total_cost = 0;
    for (double c : costs) total_cost += c;
    const double as = raw || total_cost == 0 ? 1 : total_cost;
    const double gs = raw || gamma(1) == 0 ? 1 : gamma(1);
    std::ostringstream os;
    os << "p,access,bandwidth,total\n";
    double acc = 0;
    for (std::size_t p = 1; p <= costs.size(); ++p) {
      acc += costs[order[p - 1]];
      os << p << ',' << acc / as << ',' << gamma(int(p)) / gs << ',' << res.trace[p - 1] << "\n";
    }
    std::cout << os.str();
    return 0;
  }

  std::cout << "p*: " << res.p_star << "\nselected:";
  for (int i : res.selected) std::cout << ' ' << to_string(NodeId{NodeRole::parity, i});
  std::cout << "\naccessing: " << res.accessing << "\nobjective: " << res.objective << "\n";
  return 0;
}

int cmd_figure(const Options& opt, const std::string& which, const std::string& costs_text,
               const std::string& weights_text, const std::string& gamma_perm,
               const std::string& out_path) {
  if (which == "repair_bw") {
    std::ostringstream os;
    os << "code,p,rotation,permutation,rs,bound\n";
    struct Entry {
      std::string name;
      CodeSpec rot;
      int n, k;
    };
    std::vector<Entry> entries;
    entries.push_back({"6-3",
                       build_rotation_code_shifts(6, 3, 4, {{0, 0, 0}, {0, 1, 3}, {0, 2, 1}},
                                                  {{1, 1, 1}, {1, 2, 3}, {1, 4, 5}}, 8),
                       6, 3});
    {
      SearchConfig cfg;
      cfg.n = 4, cfg.k = 2, cfg.L = 2, cfg.w = 8, cfg.lambda_seed = opt.seed;
      auto found = search_rotation_codes(cfg);
      if (found.empty()) throw std::runtime_error("figure: no (4,2) rotation code found");
      entries.push_back({"4-2", found.front().spec, 4, 2});
    }
    for (const auto& e : entries) {
      auto prof = bandwidth_profile(e.rot, PlanMethod::exact);
      for (int p = 1; p <= e.n - e.k; ++p)
        os << e.name << ',' << p << ',' << rat_str(prof.gamma_bar[p - 1]) << ','
           << rat_str(gamma_permutation(e.n, e.k, p)) << ',' << (long long)e.k * e.rot.L << ','
           << rat_str(gamma_lower_bound(e.rot.L, e.k, p)) << "\n";
    }
    emit(os.str(), out_path);
    return 0;
  }
  if (which == "total_cost") {
    return cmd_select(opt, costs_text, weights_text, gamma_perm, false, true);
  }
  throw CLI::ValidationError("figure", "expected repair_bw or total_cost");
}

int cmd_bench(const Options& opt, int n, int k, std::uint64_t size, int trials,
              const std::string& widths_text, const std::string& dir) {
  BenchConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.size_bytes = size;
  cfg.trials = trials;
  cfg.seed = opt.seed;
  cfg.dir = dir.empty() ? fs::temp_directory_path() / "progec_bench" : fs::path(dir);
  if (!widths_text.empty()) {
    cfg.widths.clear();
    const auto rows = parse_shifts(widths_text);  // keep alive: at(0) is a view into it
    for (int w : rows.at(0)) cfg.widths.push_back(w);
  }
  auto rows = run_bench(cfg);
  std::cout << "w,p,blocks_read,bytes_read,mean_seconds,recovered_mb_per_s,verified\n";
  bool all_ok = true;
  for (const auto& r : rows) {
    std::cout << r.w << ',' << r.p << ',' << r.blocks_read << ',' << r.bytes_read << ','
              << r.seconds << ',' << r.mbps << ',' << (r.verified ? 1 : 0) << "\n";
    all_ok = all_ok && r.verified;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"progressive-engagement erasure codes"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--spec", opt.spec_path, "code spec JSON file");
  app.add_option("--seed", opt.seed, "RNG seed for coefficient assignment");
  app.add_option("--w", opt.w, "symbol width in bits (8, 16, 32)");

  // make-spec
  auto* mk = app.add_subcommand("make-spec", "generate and save a code spec");
  std::string mk_kind = "permutation", mk_shifts, mk_lambdas, mk_out = "spec.json";
  int mk_n = 10, mk_k = 3, mk_L = 0, mk_budget = 1000;
  mk->add_option("--kind", mk_kind, "rotation | permutation | rs");
  mk->add_option("--n", mk_n);
  mk->add_option("--k", mk_k);
  mk->add_option("--L", mk_L, "blocks per node (rotation/rs kinds)");
  mk->add_option("--shifts", mk_shifts, "rotation shift table, rows ';'-separated: 0,0,0;0,1,3;0,2,1");
  mk->add_option("--lambdas", mk_lambdas, "explicit coefficient rows (else auto-assigned)");
  mk->add_option("--budget", mk_budget, "coefficient assignment attempts");
  mk->add_option("--out", mk_out);

  // verify-mds
  auto* vf = app.add_subcommand("verify-mds", "check that every k-subset decodes");

  // encode
  auto* en = app.add_subcommand("encode", "split and encode a file into n shards");
  std::string en_input, en_out = "shards";
  en->add_option("input", en_input, "file to encode")->required();
  en->add_option("--out", en_out, "shard directory");

  // repair-plan
  auto* rp = app.add_subcommand("repair-plan", "plan a repair without touching shards");
  std::string rp_failed, rp_parities, rp_method;
  long long rp_cap = 1'000'000;
  bool rp_full = false;
  rp->add_option("--failed", rp_failed, "node to rebuild, e.g. s1 or p2")->required();
  rp->add_option("--parities", rp_parities, "1-based parity labels, e.g. 1,3 (default: all)");
  rp->add_option("--method", rp_method, "exact | greedy | two-phase");
  rp->add_option("--cap", rp_cap, "exhaustive-search ceiling for the exact planner");
  rp->add_flag("--full", rp_full, "list every downloaded block");

  // repair
  auto* rr = app.add_subcommand("repair", "rebuild a lost shard from the others");
  std::string rr_dir = "shards", rr_failed, rr_parities, rr_method;
  long long rr_cap = 1'000'000;
  rr->add_option("--dir", rr_dir, "shard directory");
  rr->add_option("--failed", rr_failed)->required();
  rr->add_option("--parities", rr_parities);
  rr->add_option("--method", rr_method);
  rr->add_option("--cap", rr_cap);

  // profile
  auto* pf = app.add_subcommand("profile", "average repair bandwidth per parity count");
  std::string pf_method, pf_out;
  long long pf_cap = 1'000'000;
  pf->add_option("--method", pf_method, "exact | greedy | two-phase");
  pf->add_option("--cap", pf_cap);
  pf->add_option("--out", pf_out, "CSV path (default stdout)");

  // search
  auto* se = app.add_subcommand("search", "enumerate rotation structures");
  int se_n = 6, se_k = 3, se_L = 4, se_budget = 200;
  long long se_cap = 1'000'000;
  std::size_t se_limit = 0;
  bool se_nosym = false;
  std::string se_out;
  se->add_option("--n", se_n);
  se->add_option("--k", se_k);
  se->add_option("--L", se_L);
  se->add_flag("--no-symmetry", se_nosym, "search the full L^(k(n-k)) space");
  se->add_option("--budget", se_budget);
  se->add_option("--cap", se_cap);
  se->add_option("--limit", se_limit, "keep at most this many results (0 = all)");
  se->add_option("--out", se_out, "directory for spec JSONs and results.csv");

  // select
  auto* sl = app.add_subcommand("select", "choose which parities to engage");
  std::string sl_costs, sl_weights = "0.5,0.5", sl_gamma;
  bool sl_raw = false, sl_csv = false;
  sl->add_option("--costs", sl_costs, "per-parity accessing costs, e.g. 1,2,3")->required();
  sl->add_option("--weights", sl_weights, "accessing,bandwidth");
  sl->add_option("--gamma-perm", sl_gamma, "closed-form bandwidth of a permutation code: n,k");
  sl->add_flag("--raw", sl_raw, "skip normalization");
  sl->add_flag("--csv", sl_csv, "emit p,access,bandwidth,total");

  // figure
  auto* fg = app.add_subcommand("figure", "CSV data behind the plots");
  std::string fg_which, fg_costs = "1,2,3,4,5,6,7", fg_weights = "0.5,0.5", fg_gamma = "10,3",
              fg_out;
  fg->add_option("which", fg_which, "repair_bw | total_cost")->required();
  fg->add_option("--costs", fg_costs);
  fg->add_option("--weights", fg_weights);
  fg->add_option("--gamma-perm", fg_gamma);
  fg->add_option("--out", fg_out, "CSV path (default stdout)");

  // bench
  auto* be = app.add_subcommand("bench", "timed, verified recovery runs");
  int be_n = 10, be_k = 3, be_trials = 3;
  std::uint64_t be_size = 1 << 20;
  std::string be_widths, be_dir;
  be->add_option("--n", be_n);
  be->add_option("--k", be_k);
  be->add_option("--size", be_size, "input bytes");
  be->add_option("--trials", be_trials);
  be->add_option("--widths", be_widths, "default 8,16,32");
  be->add_option("--dir", be_dir, "scratch directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
  }

  try {
    if (mk->parsed())
      return cmd_make_spec(opt, mk_kind, mk_n, mk_k, mk_L, mk_shifts, mk_lambdas, mk_budget,
                           mk_out);
    if (vf->parsed()) return cmd_verify(opt);
    if (en->parsed()) return cmd_encode(opt, en_input, en_out);
    if (rp->parsed())
      return cmd_repair_plan(opt, rp_failed, rp_parities, rp_method, rp_cap, rp_full);
    if (rr->parsed()) return cmd_repair(opt, rr_dir, rr_failed, rr_parities, rr_method, rr_cap);
    if (pf->parsed()) return cmd_profile(opt, pf_method, pf_cap, pf_out);
    if (se->parsed())
      return cmd_search(opt, se_n, se_k, se_L, se_nosym, se_budget, se_cap, se_limit, se_out);
    if (sl->parsed()) return cmd_select(opt, sl_costs, sl_weights, sl_gamma, sl_raw, sl_csv);
    if (fg->parsed()) return cmd_figure(opt, fg_which, fg_costs, fg_weights, fg_gamma, fg_out);
    if (be->parsed()) return cmd_bench(opt, be_n, be_k, be_size, be_trials, be_widths, be_dir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
