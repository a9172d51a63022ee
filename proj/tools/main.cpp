// Command-line front end: seeded trials, success-curve sweeps, threshold
// bisection, first-step bound tables, embedding verification, and the tiny
// brute-force containment oracle.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "comb/embedding.hpp"
#include "comb/graph.hpp"
#include "comb/harness.hpp"
#include "comb/params.hpp"

namespace {

using comb::ParamMode;
using comb::TrialConfig;
using json = nlohmann::json;

struct CommonOpts {
  long long n = 3000;
  long long k = 6;
  double C = 10.0;
  double D = 3.0;
  std::string mode = "engineering";
  double alpha = 1.0 / 3.0;
  long long T = 0;          // 0 = formula default
  double p = -1.0;          // < 0 = formula default
  bool full_comb = false;
  double spine_d = 5.0;
  uint64_t seed = 1;
  int trials = 50;
  int workers = 0;
  std::string out;
};

TrialConfig to_config(const CommonOpts& o) {
  TrialConfig cfg;
  cfg.n = o.n;
  cfg.k = o.k;
  cfg.C = o.C;
  cfg.D = o.D;
  cfg.mode = o.mode == "paper" ? ParamMode::paper_exact : ParamMode::engineering;
  if (o.T > 0) cfg.T_override = o.T;
  if (o.p >= 0.0) cfg.p_override = o.p;
  cfg.alpha = o.alpha;
  cfg.full_comb = o.full_comb;
  cfg.spine_d = o.spine_d;
  return cfg;
}

// JSON config file mirroring the flags; explicit flags win because the file
// is applied to the option defaults before parsing.
void apply_config_file(const std::string& path, CommonOpts& o) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j = json::parse(in);
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("n", o.n);
  get("k", o.k);
  get("C", o.C);
  get("D", o.D);
  get("mode", o.mode);
  get("alpha", o.alpha);
  get("T", o.T);
  get("p", o.p);
  get("full_comb", o.full_comb);
  get("spine_d", o.spine_d);
  get("seed", o.seed);
  get("trials", o.trials);
  get("workers", o.workers);
  get("out", o.out);
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_trials) {
  cmd->add_option("--n", o.n, "vertex count");
  cmd->add_option("--k", o.k, "tooth length (must divide n)");
  cmd->add_option("--D", o.D, "degree-regime constant used to derive eps");
  cmd->add_option("--mode", o.mode, "paper|engineering")
      ->check(CLI::IsMember({"paper", "engineering"}));
  cmd->add_option("--alpha", o.alpha, "first-step placement mass");
  cmd->add_option("--T", o.T, "override the threshold T (0 = formula)");
  cmd->add_option("--p", o.p, "override the per-layer edge probability");
  cmd->add_flag("--full-comb", o.full_comb, "find the spine in an extra layer");
  cmd->add_option("--spine-d", o.spine_d, "average degree of the spine layer");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
  cmd->add_option("--out", o.out, "write output to this file instead of stdout");
  if (with_trials) cmd->add_option("--trials", o.trials, "trials per point");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
  }
}

comb::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return comb::Graph::read_edge_list(in);
}

std::string devs_table(const comb::TrialRecord& rec) {
  const comb::DevsBounds b = comb::devs_bounds(rec.params);
  const comb::TrialStats& s = rec.stats;
  const comb::DevsCheck d = comb::check_devs(rec);
  std::ostringstream os;
  auto row = [&](const char* name, const std::string& observed,
                 const std::string& bound, bool ok) {
    os << "  " << name << ": " << observed << "  vs  " << bound << "  -> "
       << (ok ? "ok" : "VIOLATED") << "\n";
  };
  os << "first-step bounds (outcome: " << comb::to_string(rec.outcome) << ")\n";
  row("(a) |Z| <= eps n", std::to_string(s.z_size),
      "<= " + std::to_string(b.eps_n), d.z_ok);
  row("(b) |W_i| in (gamma m, (1+eps) alpha m)",
      "[" + std::to_string(s.w_min) + ", " + std::to_string(s.w_max) + "]",
      "(" + std::to_string(b.w_lo) + ", " + std::to_string(b.w_hi) + ")", d.w_ok);
  row("(c) max |B_i| < eps n", std::to_string(s.b_max),
      "< " + std::to_string(b.eps_n), d.b_ok);
  row("(d) B-multiplicity <= eps k", std::to_string(s.b_mult_max),
      "<= " + std::to_string(b.mult_cap), d.mult_ok);
  row("(e) max |X_ij| < 2 m q + log n", std::to_string(s.x_max),
      "< " + std::to_string(b.x_cap), d.x_ok);
  return os.str();
}

std::string symbolic_devs(const comb::ParamSet& ps,
                          const comb::PreconditionReport& pre) {
  const comb::DevsBounds b = comb::devs_bounds(ps);
  json j;
  j["mode"] = ps.mode == ParamMode::paper_exact ? "paper" : "engineering";
  j["n"] = ps.n;
  j["k"] = ps.k;
  j["m"] = ps.m;
  j["eps"] = ps.eps;
  j["C"] = ps.C;
  j["p"] = ps.p;
  j["T"] = ps.T;
  j["c"] = ps.c;
  j["gamma"] = ps.gamma;
  j["beta"] = ps.beta;
  j["q"] = ps.q;
  j["bounds"] = {{"eps_n", b.eps_n},   {"w_lo", b.w_lo},
                 {"w_hi", b.w_hi},     {"mult_cap", b.mult_cap},
                 {"x_cap", b.x_cap}};
  j["preconditions_hold"] = pre.all_hold();
  j["messages"] = pre.messages;
  return j.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comb embedding experiments on layered random graphs"};
  app.require_subcommand(1);

  CommonOpts o;

  // --config is applied before CLI11 parses the rest, so flags override it.
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }

  auto* trial = app.add_subcommand("trial", "run one seeded trial, JSON to stdout");
  add_common_flags(trial, o, false);
  trial->add_option("--C", o.C, "engineering constant (p = C log n / n)");
  trial->add_option("--config", config_path)->group("");

  auto* sweep_cmd = app.add_subcommand("sweep", "success frequency over a C grid, CSV");
  std::vector<double> c_grid{4, 8, 12, 16};
  add_common_flags(sweep_cmd, o, true);
  sweep_cmd->add_option("--C", c_grid, "C grid values")->delimiter(',');
  sweep_cmd->add_option("--config", config_path)->group("");

  auto* thr = app.add_subcommand("threshold", "bisect C for a target success rate");
  double target = 0.5, tol = 1.0, c_lo = 1.0, c_hi = 32.0;
  add_common_flags(thr, o, true);
  thr->add_option("--target", target, "target success probability");
  thr->add_option("--tol", tol, "bracket width to stop at");
  thr->add_option("--C-lo", c_lo, "initial lower C");
  thr->add_option("--C-hi", c_hi, "initial upper C");
  thr->add_option("--config", config_path)->group("");

  auto* devs = app.add_subcommand("devs", "evaluate the first-step bounds");
  bool symbolic = false;
  add_common_flags(devs, o, false);
  devs->add_option("--C", o.C, "engineering constant");
  devs->add_flag("--symbolic", symbolic,
                 "derive and print the bounds without sampling");
  devs->add_option("--config", config_path)->group("");

  auto* verify = app.add_subcommand("verify", "check an embedding against a graph");
  std::string graph_path, embedding_path;
  verify->add_option("--graph", graph_path, "edge-list file (header n, lines 'u v')")
      ->required();
  verify->add_option("--embedding", embedding_path, "embedding JSON file")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force comb containment, n <= 12");
  std::string oracle_graph;
  long long oracle_k = 2;
  oracle->add_option("--graph", oracle_graph, "edge-list file")->required();
  oracle->add_option("--k", oracle_k, "tooth length")->required();

  if (!config_path.empty()) {
    try {
      apply_config_file(config_path, o);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*trial) {
      auto rec = comb::run_trial(to_config(o), o.seed);
      emit(o, rec.to_json());
      return 0;
    }
    if (*sweep_cmd) {
      auto report = comb::sweep(to_config(o), c_grid, o.trials, o.seed, o.workers);
      emit(o, report.to_csv());
      return 0;
    }
    if (*thr) {
      auto est = comb::estimate_threshold(to_config(o), target, o.trials, tol,
                                          o.seed, o.workers, c_lo, c_hi);
      emit(o, est.to_json());
      return 0;
    }
    if (*devs) {
      TrialConfig cfg = to_config(o);
      if (symbolic) {
        auto [ps, pre] = comb::derive_params(cfg.n, cfg.k, cfg.D, cfg.mode,
                                             cfg.overrides());
        emit(o, symbolic_devs(ps, pre));
      } else {
        auto rec = comb::run_trial(cfg, o.seed);
        emit(o, devs_table(rec));
      }
      return 0;
    }
    if (*verify) {
      comb::Graph g = load_graph(graph_path);
      std::ifstream in(embedding_path);
      if (!in) throw std::runtime_error("cannot open " + embedding_path);
      std::stringstream buf;
      buf << in.rdbuf();
      comb::CombEmbedding emb = comb::embedding_from_json(buf.str());
      auto vr = comb::verify_embedding(g, emb, emb.roots, emb.k);
      if (vr.ok) {
        std::cout << "accept\n";
        return 0;
      }
      std::cout << "reject: " << vr.reason << "\n";
      return 1;
    }
    if (*oracle) {
      comb::Graph g = load_graph(oracle_graph);
      bool contains = comb::brute_force_contains_comb(g, static_cast<int>(oracle_k));
      json j;
      j["n"] = g.vertex_count();
      j["k"] = oracle_k;
      j["contains"] = contains;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
