#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "comb/embedding.hpp"
#include "comb/harness.hpp"
#include "comb/params.hpp"

// All machine-readable output funnels through here so that field order and
// number formatting stay byte-stable run to run.

namespace comb {

namespace {

using json = nlohmann::ordered_json;

json params_json(const ParamSet& ps, const PreconditionReport& pre) {
  json j;
  j["mode"] = ps.mode == ParamMode::paper_exact ? "paper" : "engineering";
  j["D"] = ps.D;
  j["n"] = ps.n;
  j["k"] = ps.k;
  j["m"] = ps.m;
  j["eps"] = ps.eps;
  j["C"] = ps.C;
  j["p"] = ps.p;
  j["T"] = ps.T;
  j["c"] = ps.c;
  j["alpha"] = ps.alpha;
  j["gamma"] = ps.gamma;
  j["beta"] = ps.beta;
  j["q"] = ps.q;
  j["preconditions"] = {
      {"k_below_D_log_n", pre.k_below_D_log_n},
      {"k_above_2_over_eps", pre.k_above_2_over_eps},
      {"D_above_2", pre.D_above_2},
      {"p_at_most_1", pre.p_at_most_1},
      {"T_at_least_1", pre.T_at_least_1},
      {"cgamma_above_1", pre.cgamma_above_1},
      {"messages", pre.messages},
  };
  return j;
}

json embedding_json(const CombEmbedding& emb) {
  json j;
  j["k"] = emb.k;
  j["roots"] = emb.roots;
  j["paths"] = emb.paths;
  if (emb.spine_edges) {
    json edges = json::array();
    for (auto [u, v] : *emb.spine_edges) edges.push_back({u, v});
    j["spine_edges"] = std::move(edges);
  }
  return j;
}

}  // namespace

std::string TrialRecord::to_json() const {
  json j;
  j["seed"] = seed;
  j["outcome"] = comb::to_string(outcome);
  j["full_comb"] = full_comb;
  if (full_comb) j["spine_d"] = spine_d;
  j["params"] = params_json(params, preconditions);
  j["stats"] = {
      {"z_size", stats.z_size},
      {"w_min", stats.w_min},
      {"w_max", stats.w_max},
      {"b_max", stats.b_max},
      {"b_mult_max", stats.b_mult_max},
      {"x_max", stats.x_max},
      {"min_repair_avail", stats.min_repair_avail},
      {"runtime_ms", stats.runtime_ms},
  };
  if (devs) {
    const DevsBounds b = devs_bounds(params);
    j["devs"] = {
        {"z_ok", devs->z_ok},       {"w_ok", devs->w_ok},
        {"b_ok", devs->b_ok},       {"mult_ok", devs->mult_ok},
        {"x_ok", devs->x_ok},       {"all", devs->all()},
        {"bounds",
         {{"eps_n", b.eps_n},
          {"w_lo", b.w_lo},
          {"w_hi", b.w_hi},
          {"mult_cap", b.mult_cap},
          {"x_cap", b.x_cap}}},
    };
  } else {
    j["devs"] = nullptr;
  }
  if (stuck) {
    j["stuck"] = {{"vertex", stuck->vertex},
                  {"block", stuck->block},
                  {"available", stuck->available}};
  }
  if (fill_failure) {
    j["fill_failure"] = {
        {"kind", fill_failure->kind == FillFailure::Kind::infeasible
                     ? "infeasible"
                     : "negative_deficit"},
        {"violator_blocks", fill_failure->violator_blocks},
        {"violator_size", fill_failure->violator_size},
        {"neighborhood_size", fill_failure->right_neighborhood_size},
        {"block", fill_failure->block},
    };
  }
  if (!matching_certificates.empty()) {
    json certs = json::array();
    for (const auto& c : matching_certificates) {
      certs.push_back({{"left_block", c.left_block},
                       {"violator", c.violator},
                       {"neighborhood_size", c.neighborhood_size}});
    }
    j["matching_certificates"] = std::move(certs);
  }
  if (embedding) j["embedding"] = embedding_json(*embedding);
  return j.dump(2);
}

std::string SweepReport::to_csv() const {
  std::ostringstream os;
  os << "n,k,C,trials,successes,freq,lo,hi\n";
  char buf[160];
  for (const auto& pt : points) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.6g,%d,%d,%.6f,%.6f,%.6f\n", n, k,
                  pt.C, pt.trials, pt.successes, pt.freq, pt.lo, pt.hi);
    os << buf;
  }
  return os.str();
}

std::string ThresholdEstimate::to_json() const {
  json j;
  j["target"] = target;
  j["C_lo"] = lo;
  j["C_hi"] = hi;
  j["width"] = hi - lo;
  json probes_json = json::array();
  for (const auto& p : probes) {
    probes_json.push_back(
        {{"C", p.C}, {"trials", p.trials}, {"successes", p.successes}, {"freq", p.freq}});
  }
  j["probes"] = std::move(probes_json);
  return j.dump(2);
}

std::string embedding_to_json(const CombEmbedding& emb) {
  return embedding_json(emb).dump(2);
}

CombEmbedding embedding_from_json(const std::string& text) {
  json j = json::parse(text);
  CombEmbedding emb;
  emb.k = j.at("k").get<int>();
  emb.roots = j.at("roots").get<std::vector<int>>();
  emb.paths = j.at("paths").get<std::vector<std::vector<int>>>();
  if (j.contains("spine_edges") && !j["spine_edges"].is_null()) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["spine_edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("embedding json: bad spine edge");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    emb.spine_edges = std::move(edges);
  }
  return emb;
}

std::string embedding_to_text(const CombEmbedding& emb) {
  std::ostringstream os;
  os << "comb: m=" << emb.paths.size() << " k=" << emb.k << "\n";
  if (emb.spine_edges) {
    os << "spine:";
    for (int r : emb.roots) os << " " << r;
    os << "\n";
  }
  for (size_t r = 0; r < emb.paths.size(); ++r) {
    os << "path " << r << ":";
    for (int v : emb.paths[r]) os << " " << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace comb
