#include "comb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "comb/rng.hpp"

namespace comb {

namespace {

constexpr uint64_t kThresholdProbeBase = 1u << 20;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void fill_first_step_stats(const PartitionState& st, TrialStats& stats) {
  stats.z_size = st.Z.count();
  if (st.k >= 2) {
    int lo = st.n + 1, hi = -1;
    for (int i = 1; i < st.k; ++i) {
      const int w = st.W[static_cast<size_t>(i)].count();
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    stats.w_min = lo;
    stats.w_max = hi;
  }
}

void fill_barred_stats(const PartitionState& st, TrialStats& stats) {
  int b_max = 0;
  for (int i = 1; i < st.k; ++i)
    b_max = std::max(b_max, st.B[static_cast<size_t>(i)].count());
  stats.b_max = b_max;

  int mult_max = 0;
  for (int v = 0; v < st.n; ++v) {
    int mult = 0;
    for (int i = 1; i < st.k; ++i)
      if (st.B[static_cast<size_t>(i)].test(v)) ++mult;
    mult_max = std::max(mult_max, mult);
  }
  stats.b_mult_max = mult_max;
}

void fill_deficient_stats(const PartitionState& st, TrialStats& stats) {
  size_t x_max = 0;
  for (const auto& [key, xs] : st.X) x_max = std::max(x_max, xs.size());
  stats.x_max = static_cast<int>(x_max);
}

MatchingCertificate make_certificate(const Graph& g,
                                     const std::vector<std::vector<int>>& blocks,
                                     int left_block, const MatchingOutcome& mo) {
  MatchingCertificate cert;
  cert.left_block = left_block;
  const auto& left = blocks[static_cast<size_t>(left_block)];
  const auto& right = blocks[static_cast<size_t>(left_block) + 1];
  for (int idx : mo.violator) cert.violator.push_back(left[static_cast<size_t>(idx)]);
  std::sort(cert.violator.begin(), cert.violator.end());

  Bitset nbhd(g.vertex_count());
  Bitset right_mask(g.vertex_count());
  for (int v : right) right_mask.set(v);
  for (int a : cert.violator) {
    g.neighbors(a).for_each([&](int v) {
      if (right_mask.test(v)) nbhd.set(v);
    });
  }
  cert.neighborhood_size = nbhd.count();
  return cert;
}

}  // namespace

std::string to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::success: return "success";
    case TrialOutcome::stuck_in_repair: return "stuck_in_repair";
    case TrialOutcome::fill_infeasible: return "fill_infeasible";
    case TrialOutcome::matching_deficient: return "matching_deficient";
    case TrialOutcome::spine_failure: return "spine_failure";
  }
  return "unknown";
}

DevsBounds devs_bounds(const ParamSet& ps) {
  DevsBounds b;
  b.eps_n = ps.eps * static_cast<double>(ps.n);
  b.w_lo = ps.gamma * static_cast<double>(ps.m);
  b.w_hi = (1.0 + ps.eps) * ps.alpha * static_cast<double>(ps.m);
  b.mult_cap = ps.eps * static_cast<double>(ps.k);
  b.q = ps.q;
  b.x_cap = 2.0 * static_cast<double>(ps.m) * ps.q +
            std::log(static_cast<double>(ps.n));
  return b;
}

DevsCheck check_devs(const TrialRecord& record) {
  const ParamSet& ps = record.params;
  const TrialStats& s = record.stats;
  const DevsBounds b = devs_bounds(ps);
  DevsCheck d;
  d.z_ok = static_cast<double>(s.z_size) <= b.eps_n;
  d.w_ok = ps.k == 1 || (static_cast<double>(s.w_min) > b.w_lo &&
                         static_cast<double>(s.w_max) < b.w_hi);
  d.b_ok = static_cast<double>(s.b_max) < b.eps_n;
  d.mult_ok = static_cast<double>(s.b_mult_max) <= b.mult_cap;
  d.x_ok = static_cast<double>(s.x_max) < b.x_cap;
  return d;
}

TrialRecord run_trial(const TrialConfig& cfg, uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();

  auto [params, pre] = derive_params(cfg.n, cfg.k, cfg.D, cfg.mode, cfg.overrides());
  if (params.p > 1.0)
    throw std::invalid_argument(
        "run_trial: p = C log n / n exceeds 1 at this n; use engineering mode "
        "with a smaller C or a p override");

  TrialRecord rec;
  rec.seed = seed;
  rec.params = params;
  rec.preconditions = pre;
  rec.full_comb = cfg.full_comb;
  rec.spine_d = cfg.full_comb ? cfg.spine_d : 0.0;

  auto finish = [&](TrialOutcome outcome) -> TrialRecord& {
    rec.outcome = outcome;
    rec.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return rec;
  };

  const int n = static_cast<int>(params.n);
  const int m = static_cast<int>(params.m);
  const int k = static_cast<int>(params.k);

  LayeredGraph layers = sample_layers(n, params.p, seed);

  Graph spine_layer;
  std::vector<int> roots;
  if (cfg.full_comb) {
    const double sp = std::min(1.0, cfg.spine_d / static_cast<double>(n));
    spine_layer = Graph::sample_gnp(n, sp, derive_seed(seed, seed_tag::kSpine));
    auto spine = find_spine(spine_layer, m);
    if (!spine) return finish(TrialOutcome::spine_failure);
    roots = std::move(*spine);
  } else {
    roots.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) roots[static_cast<size_t>(i)] = i;
  }

  PartitionState st =
      first_step(layers.g1, roots, params, derive_seed(seed, seed_tag::kFirstStep));
  fill_first_step_stats(st, rec.stats);

  if (st.phase != Phase::filled) {
    compute_barred(layers.g1, st, params);
    fill_barred_stats(st, rec.stats);
    compute_deficient(layers.g1, st, params);
    fill_deficient_stats(st, rec.stats);
    rec.devs = check_devs(rec);

    auto stuck = repair(layers.g2, st, params);
    rec.stats.min_repair_avail = st.min_repair_avail;
    if (stuck) {
      rec.stuck = *stuck;
      return finish(TrialOutcome::stuck_in_repair);
    }

    auto fill_fail = fill_in(st, params, derive_seed(seed, seed_tag::kFill));
    if (fill_fail) {
      rec.fill_failure = *fill_fail;
      return finish(TrialOutcome::fill_infeasible);
    }
  } else {
    rec.devs = check_devs(rec);
  }

  const auto blocks = st.blocks();
  auto matchings = block_matchings(layers.union_graph, blocks);
  bool deficient = false;
  for (size_t i = 0; i < matchings.size(); ++i) {
    if (!matchings[i].perfect) {
      deficient = true;
      rec.matching_certificates.push_back(make_certificate(
          layers.union_graph, blocks, static_cast<int>(i), matchings[i]));
    }
  }
  if (deficient) return finish(TrialOutcome::matching_deficient);

  CombEmbedding emb = assemble_paths(blocks, matchings);
  Graph witness = layers.union_graph;
  if (cfg.full_comb) {
    witness.merge(spine_layer);
    std::vector<std::pair<int, int>> spine_edges;
    for (size_t i = 0; i + 1 < roots.size(); ++i)
      spine_edges.emplace_back(roots[i], roots[i + 1]);
    emb.spine_edges = std::move(spine_edges);
  }

  VerifyResult vr = verify_embedding(witness, emb, roots, k);
  if (!vr.ok)
    throw std::logic_error("run_trial: pipeline produced an embedding that "
                           "fails verification: " + vr.reason);
  rec.embedding = std::move(emb);
  return finish(TrialOutcome::success);
}

std::pair<double, double> wilson_interval(int successes, int trials) {
  if (trials <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th normal quantile
  const double nt = trials;
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (phat + z2 / (2.0 * nt)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// Runs `count` trials of `cfg` with seeds trial_seed(base, group, t), fanned
// out over a pool. Returns the number of successes; optionally collects the
// records.
int run_batch(const TrialConfig& cfg, uint64_t base_seed, uint64_t group,
              int count, int workers, std::vector<TrialRecord>* out) {
  if (out) out->resize(static_cast<size_t>(count));
  std::atomic<int> next{0};
  std::atomic<int> successes{0};
  const int nthreads = std::min(resolve_workers(workers), std::max(count, 1));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nthreads));
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (int w = 0; w < nthreads; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= count) return;
        try {
          TrialRecord rec = run_trial(cfg, trial_seed(base_seed, group, static_cast<uint64_t>(t)));
          if (rec.outcome == TrialOutcome::success) successes.fetch_add(1);
          if (out) (*out)[static_cast<size_t>(t)] = std::move(rec);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return successes.load();
}

}  // namespace

SweepReport sweep(const TrialConfig& base, const std::vector<double>& c_grid,
                  int trials_per_point, uint64_t base_seed, int workers) {
  if (c_grid.empty()) throw std::invalid_argument("sweep: empty grid");
  if (trials_per_point < 1) throw std::invalid_argument("sweep: trials must be >= 1");

  // Points keep their grid position for seeding purposes, then the report is
  // sorted by C, so reordering the grid reorders nothing but the output.
  std::vector<size_t> order(c_grid.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return c_grid[a] < c_grid[b]; });

  SweepReport report;
  report.n = base.n;
  report.k = base.k;
  report.base_seed = base_seed;
  for (size_t idx : order) {
    TrialConfig cfg = base;
    cfg.C = c_grid[idx];
    SweepPoint pt;
    pt.C = c_grid[idx];
    pt.trials = trials_per_point;
    pt.successes = run_batch(cfg, base_seed, static_cast<uint64_t>(idx),
                             trials_per_point, workers, nullptr);
    pt.freq = static_cast<double>(pt.successes) / static_cast<double>(pt.trials);
    std::tie(pt.lo, pt.hi) = wilson_interval(pt.successes, pt.trials);
    report.points.push_back(pt);
  }
  return report;
}

ThresholdEstimate estimate_threshold(const TrialConfig& base, double target,
                                     int trials_per_probe, double tolerance,
                                     uint64_t base_seed, int workers,
                                     double c_lo, double c_hi) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("estimate_threshold: target must lie in (0, 1)");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("estimate_threshold: tolerance must be positive");
  if (!(c_lo >= 0.0 && c_hi > c_lo))
    throw std::invalid_argument("estimate_threshold: bad initial bracket");

  ThresholdEstimate est;
  est.target = target;
  est.lo = c_lo;
  est.hi = c_hi;
  if (c_hi - c_lo < tolerance) return est;

  uint64_t probe_no = 0;
  auto probe = [&](double c) {
    TrialConfig cfg = base;
    cfg.C = c;
    ThresholdProbe pr;
    pr.C = c;
    pr.trials = trials_per_probe;
    pr.successes = run_batch(cfg, base_seed, kThresholdProbeBase + probe_no++,
                             trials_per_probe, workers, nullptr);
    pr.freq = static_cast<double>(pr.successes) / static_cast<double>(pr.trials);
    est.probes.push_back(pr);
    return pr.freq;
  };

  // Establish a bracket: freq(lo) < target <= freq(hi), widening when needed.
  double f_lo = probe(est.lo);
  int widen = 0;
  while (f_lo >= target && widen < 8 && est.lo > 0.0) {
    est.lo /= 2.0;
    if (widen == 7) est.lo = 0.0;  // last attempt: the leftmost possible C
    f_lo = probe(est.lo);
    ++widen;
  }
  if (f_lo >= target)
    throw std::runtime_error("estimate_threshold: could not bracket from below");

  double f_hi = probe(est.hi);
  widen = 0;
  while (f_hi < target && widen < 8) {
    est.hi *= 2.0;
    f_hi = probe(est.hi);
    ++widen;
  }
  if (f_hi < target)
    throw std::runtime_error("estimate_threshold: could not bracket from above");

  while (est.hi - est.lo >= tolerance) {
    const double mid = (est.lo + est.hi) / 2.0;
    if (probe(mid) >= target)
      est.hi = mid;
    else
      est.lo = mid;
  }
  return est;
}

}  // namespace comb
