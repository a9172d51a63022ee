#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "comb/harness.hpp"
#include "comb/rng.hpp"
#include "support/oracles.hpp"

using namespace comb;

namespace {

TrialConfig small_cfg() {
  TrialConfig cfg;
  cfg.n = 300;
  cfg.k = 6;
  cfg.C = 10.0;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("C=0 fails without edges, with a structured outcome") {
  TrialConfig cfg = small_cfg();
  cfg.C = 0.0;
  auto rec = run_trial(cfg, 3);
  CHECK((rec.outcome == TrialOutcome::stuck_in_repair ||
         rec.outcome == TrialOutcome::matching_deficient));
  CHECK(!rec.embedding.has_value());
  if (rec.outcome == TrialOutcome::stuck_in_repair) {
    REQUIRE(rec.stuck.has_value());
    CHECK(rec.stuck->available == 0);
  }
}

TEST_CASE("complete-graph override succeeds and verifies") {
  TrialConfig cfg;
  cfg.n = 240;
  cfg.k = 4;
  cfg.p_override = 1.0;
  cfg.T_override = 1;
  auto rec = run_trial(cfg, 5);
  REQUIRE(rec.outcome == TrialOutcome::success);
  REQUIRE(rec.embedding.has_value());
  CHECK(rec.embedding->paths.size() == 60);
  REQUIRE(rec.devs.has_value());
  CHECK(rec.devs->z_ok);   // Z empty on the complete graph
  CHECK(rec.devs->b_ok);
  CHECK(rec.devs->x_ok);
}

TEST_CASE("run_trial is a pure function of (config, seed)") {
  TrialConfig cfg = small_cfg();
  auto a = run_trial(cfg, 11);
  auto b = run_trial(cfg, 11);
  CHECK(a.outcome == b.outcome);
  CHECK(a.stats.z_size == b.stats.z_size);
  CHECK(a.stats.w_min == b.stats.w_min);
  CHECK(a.stats.w_max == b.stats.w_max);
  CHECK(a.stats.b_max == b.stats.b_max);
  CHECK(a.stats.x_max == b.stats.x_max);
  // byte-level: identical JSON once the wall-clock field is zeroed
  auto strip = [](TrialRecord r) {
    r.stats.runtime_ms = 0.0;
    return r.to_json();
  };
  CHECK(strip(a) == strip(b));
  auto c = run_trial(cfg, 12);
  CHECK(strip(a) != strip(c));
}

TEST_CASE("success outcomes re-verify against the same-seed union graph") {
  TrialConfig cfg = small_cfg();
  cfg.C = 14.0;
  int successes = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto rec = run_trial(cfg, seed);
    if (rec.outcome != TrialOutcome::success) continue;
    ++successes;
    LayeredGraph layers = sample_layers(static_cast<int>(cfg.n), rec.params.p, seed);
    REQUIRE(rec.embedding.has_value());
    CHECK(verify_embedding(layers.union_graph, *rec.embedding,
                           rec.embedding->roots, static_cast<int>(cfg.k))
              .ok);
  }
  MESSAGE("successes at C=14, n=300: ", successes, "/20");
  CHECK(successes > 0);
}

TEST_CASE("matching-deficient records carry sound violators") {
  // p tiny but T=1 via clamp: bars stay manageable, matchings starve
  TrialConfig cfg;
  cfg.n = 300;
  cfg.k = 6;
  cfg.C = 1.2;
  int deficient_seen = 0;
  for (uint64_t seed = 0; seed < 40 && deficient_seen < 5; ++seed) {
    auto rec = run_trial(cfg, seed);
    if (rec.outcome != TrialOutcome::matching_deficient) continue;
    ++deficient_seen;

    // replay the partition through the documented seed streams to recover
    // the blocks, then recompute |N(A) ∩ M_j| from scratch
    LayeredGraph layers = sample_layers(static_cast<int>(cfg.n), rec.params.p, seed);
    std::vector<int> roots(static_cast<size_t>(rec.params.m));
    for (int i = 0; i < rec.params.m; ++i) roots[static_cast<size_t>(i)] = i;
    auto st = first_step(layers.g1, roots, rec.params,
                         derive_seed(seed, seed_tag::kFirstStep));
    compute_barred(layers.g1, st, rec.params);
    compute_deficient(layers.g1, st, rec.params);
    REQUIRE(!repair(layers.g2, st, rec.params));
    REQUIRE(!fill_in(st, rec.params, derive_seed(seed, seed_tag::kFill)));
    auto blocks = st.blocks();

    REQUIRE(!rec.matching_certificates.empty());
    for (const auto& cert : rec.matching_certificates) {
      CHECK(!cert.violator.empty());
      const auto& right = blocks[static_cast<size_t>(cert.left_block) + 1];
      Bitset right_mask(static_cast<int>(cfg.n));
      for (int v : right) right_mask.set(v);
      Bitset nbhd(static_cast<int>(cfg.n));
      for (int a : cert.violator) {
        CHECK(std::find(blocks[static_cast<size_t>(cert.left_block)].begin(),
                        blocks[static_cast<size_t>(cert.left_block)].end(),
                        a) != blocks[static_cast<size_t>(cert.left_block)].end());
        layers.union_graph.neighbors(a).for_each([&](int v) {
          if (right_mask.test(v)) nbhd.set(v);
        });
      }
      CHECK(nbhd.count() == cert.neighborhood_size);
      CHECK(nbhd.count() < static_cast<int>(cert.violator.size()));
    }
  }
  MESSAGE("matching_deficient records seen: ", deficient_seen);
  CHECK(deficient_seen > 0);
}

TEST_CASE("full-comb mode records spine failures distinctly") {
  TrialConfig cfg;
  cfg.n = 300;
  cfg.k = 6;
  cfg.C = 12.0;
  cfg.full_comb = true;
  cfg.spine_d = 0.0;  // empty spine layer: the spine cannot exist
  auto rec = run_trial(cfg, 1);
  CHECK(rec.outcome == TrialOutcome::spine_failure);
  CHECK(!rec.devs.has_value());

  cfg.spine_d = 8.0;
  int successes = 0;
  for (uint64_t seed = 0; seed < 15; ++seed) {
    auto rec2 = run_trial(cfg, seed);
    if (rec2.outcome == TrialOutcome::success) {
      ++successes;
      REQUIRE(rec2.embedding.has_value());
      REQUIRE(rec2.embedding->spine_edges.has_value());
      CHECK(rec2.embedding->spine_edges->size() == rec2.embedding->roots.size() - 1);
    }
  }
  MESSAGE("full-comb successes at n=300: ", successes, "/15");
}

TEST_CASE("paper-exact run at desk scale is rejected up front") {
  TrialConfig cfg;
  cfg.n = 300;
  cfg.k = 6;
  cfg.mode = ParamMode::paper_exact;
  CHECK_THROWS_AS(run_trial(cfg, 1), std::invalid_argument);
}

TEST_CASE("check_devs evaluates the five bounds from the record") {
  TrialRecord rec;
  auto [ps, pre] = derive_params(3000, 6, 3.0, ParamMode::engineering,
                                 ParamOverrides{.C = 10.0});
  rec.params = ps;
  const DevsBounds b = devs_bounds(ps);

  rec.stats.z_size = 0;
  rec.stats.w_min = static_cast<int>(b.w_lo) + 1;
  rec.stats.w_max = static_cast<int>(b.w_hi) - 1;
  rec.stats.b_max = 0;
  rec.stats.b_mult_max = 0;
  rec.stats.x_max = 0;
  CHECK(check_devs(rec).all());

  rec.stats.z_size = static_cast<int>(b.eps_n) + 1;
  CHECK(!check_devs(rec).z_ok);
  rec.stats.b_mult_max = static_cast<int>(b.mult_cap) + 1;
  CHECK(!check_devs(rec).mult_ok);
  rec.stats.x_max = static_cast<int>(b.x_cap) + 1;
  CHECK(!check_devs(rec).x_ok);
}

TEST_CASE("p=0 fails bound (a) as soon as R is nonempty") {
  TrialConfig cfg = small_cfg();
  cfg.C = 0.0;
  auto rec = run_trial(cfg, 2);
  REQUIRE(rec.devs.has_value());
  CHECK(!rec.devs->z_ok);  // |Z| = |R| = 250 > eps n ~ 9
}

TEST_CASE("symbolic paper-exact bounds evaluate without sampling") {
  auto [ps, pre] = derive_params(300000, 30, 3.0, ParamMode::paper_exact);
  CHECK(ps.p <= 1.0);
  const DevsBounds b = devs_bounds(ps);
  CHECK(b.eps_n == doctest::Approx(ps.eps * 300000));
  CHECK(b.x_cap ==
        doctest::Approx(2.0 * static_cast<double>(ps.m) * ps.q + std::log(300000.0)));
  CHECK(ps.T >= 1000);
  CHECK(b.q < 1e-30);  // the tail bound is astronomically small here
}

TEST_CASE("wilson interval contains the point estimate and stays in [0,1]") {
  for (int s : {0, 1, 25, 49, 50}) {
    auto [lo, hi] = wilson_interval(s, 50);
    const double phat = s / 50.0;
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);
    CHECK(lo <= phat);
    CHECK(phat <= hi);
  }
  auto [lo0, hi0] = wilson_interval(0, 0);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == 1.0);
}

TEST_CASE("sweep: C=0 grid all failures; p-override grid all successes") {
  TrialConfig cfg;
  cfg.n = 120;
  cfg.k = 4;
  auto zero = sweep(cfg, {0.0}, 10, 77, 1);
  REQUIRE(zero.points.size() == 1);
  CHECK(zero.points[0].successes == 0);
  CHECK(zero.points[0].freq == 0.0);

  cfg.p_override = 1.0;
  cfg.T_override = 1;
  auto ones = sweep(cfg, {5.0}, 10, 77, 1);
  CHECK(ones.points[0].successes == 10);
  CHECK(ones.points[0].freq == 1.0);
  CHECK(ones.points[0].lo <= 1.0);
}

TEST_CASE("sweep results are independent of worker count and grid order") {
  TrialConfig cfg = small_cfg();
  auto a = sweep(cfg, {6.0, 12.0}, 8, 5, 1);
  auto b = sweep(cfg, {12.0, 6.0}, 8, 5, 4);
  CHECK(a.to_csv() == b.to_csv());
  // sorted by C
  CHECK(a.points[0].C == 6.0);
  CHECK(a.points[1].C == 12.0);
}

TEST_CASE("threshold: wide tolerance returns the initial bracket untouched") {
  TrialConfig cfg = small_cfg();
  auto est = estimate_threshold(cfg, 0.5, 4, 100.0, 9, 1, 2.0, 20.0);
  CHECK(est.lo == 2.0);
  CHECK(est.hi == 20.0);
  CHECK(est.probes.empty());
}

TEST_CASE("threshold bisection is deterministic and lands in the transition") {
  TrialConfig cfg;
  cfg.n = 300;
  cfg.k = 6;
  auto a = estimate_threshold(cfg, 0.5, 12, 2.0, 21, 1, 2.0, 32.0);
  auto b = estimate_threshold(cfg, 0.5, 12, 2.0, 21, 2, 2.0, 32.0);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK(a.hi - a.lo < 2.0);
  CHECK(a.lo >= 2.0);
  CHECK(a.hi <= 32.0);
  MESSAGE("threshold bracket at n=300: [", a.lo, ", ", a.hi, "]");
}

TEST_CASE("trial JSON embeds params, flags, stats, and devs") {
  TrialConfig cfg = small_cfg();
  auto rec = run_trial(cfg, 4);
  const std::string j = rec.to_json();
  for (const char* key :
       {"\"seed\"", "\"outcome\"", "\"params\"", "\"eps\"", "\"preconditions\"",
        "\"stats\"", "\"z_size\"", "\"devs\"", "\"mode\""}) {
    CAPTURE(key);
    CHECK(j.find(key) != std::string::npos);
  }
}

TEST_SUITE_END();
