#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "comb/embedding.hpp"
#include "comb/graph.hpp"
#include "comb/params.hpp"
#include "comb/partition.hpp"

namespace comb {

enum class TrialOutcome {
  success,
  stuck_in_repair,
  fill_infeasible,
  matching_deficient,
  spine_failure,
};

std::string to_string(TrialOutcome o);

// Everything a trial needs besides its seed. Defaults give a rooted
// engineering-mode run with roots 0..m-1.
struct TrialConfig {
  long long n = 0;
  long long k = 0;
  double C = 0.0;
  double D = 3.0;
  ParamMode mode = ParamMode::engineering;
  std::optional<long long> T_override;
  std::optional<double> p_override;
  double alpha = 1.0 / 3.0;
  bool full_comb = false;  // find the spine in an extra G(n, spine_d/n) layer
  double spine_d = 5.0;

  ParamOverrides overrides() const {
    ParamOverrides ov;
    if (mode == ParamMode::engineering) ov.C = C;
    ov.T = T_override;
    ov.p = p_override;
    ov.alpha = alpha;
    return ov;
  }
};

struct TrialStats {
  int z_size = 0;
  int w_min = 0;          // over blocks 1..k-1
  int w_max = 0;
  int b_max = 0;          // max_i |B_i|
  int b_mult_max = 0;     // max over vertices of #{i : x in B_i}
  int x_max = 0;          // max_{i,j} |X_{ij}|
  long long min_repair_avail = -1;
  double runtime_ms = 0.0;  // wall time; excluded from reproducibility checks
};

// The five first-step bounds, evaluated on one trial's statistics:
//   (a) |Z| <= eps n            (b) gamma m < |W_i| < (1+eps) alpha m
//   (c) |B_i| < eps n           (d) no vertex in more than eps k of the B_i
//   (e) |X_{ij}| < 2 m q + log n
struct DevsCheck {
  bool z_ok = false;
  bool w_ok = false;
  bool b_ok = false;
  bool mult_ok = false;
  bool x_ok = false;

  bool all() const { return z_ok && w_ok && b_ok && mult_ok && x_ok; }
};

// The numeric thresholds behind DevsCheck, for reporting (and for parameter
// regimes that are only evaluated symbolically, never sampled).
struct DevsBounds {
  double eps_n = 0.0;
  double w_lo = 0.0;
  double w_hi = 0.0;
  double mult_cap = 0.0;
  double x_cap = 0.0;
  double q = 0.0;
};

DevsBounds devs_bounds(const ParamSet& ps);

// Violator certificate for a failed block matching: a set A of vertices of
// blocks[left_block] whose joint neighborhood in blocks[left_block + 1] has
// fewer than |A| vertices.
struct MatchingCertificate {
  int left_block = -1;
  std::vector<int> violator;       // vertex ids
  int neighborhood_size = 0;
};

struct TrialRecord {
  uint64_t seed = 0;
  ParamSet params;
  PreconditionReport preconditions;
  bool full_comb = false;
  double spine_d = 0.0;
  TrialOutcome outcome = TrialOutcome::spine_failure;
  TrialStats stats;
  std::optional<DevsCheck> devs;  // absent when the run died before first step
  std::optional<StuckInRepair> stuck;
  std::optional<FillFailure> fill_failure;
  std::vector<MatchingCertificate> matching_certificates;
  std::optional<CombEmbedding> embedding;  // present iff outcome == success

  std::string to_json() const;  // stable field order; see serialize.cpp
};

// One end-to-end run: sample layers at p = C log n / n (plus the spine layer
// in full-comb mode), build the partition, match consecutive blocks on the
// union, assemble and verify. Pure function of (config, seed); every failure
// is an outcome, not an exception.
TrialRecord run_trial(const TrialConfig& cfg, uint64_t seed);

DevsCheck check_devs(const TrialRecord& record);

// Wilson 95% score interval for successes/trials.
std::pair<double, double> wilson_interval(int successes, int trials);

struct SweepPoint {
  double C = 0.0;
  int trials = 0;
  int successes = 0;
  double freq = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct SweepReport {
  long long n = 0;
  long long k = 0;
  uint64_t base_seed = 0;
  std::vector<SweepPoint> points;  // sorted by C

  std::string to_csv() const;  // header n,k,C,trials,successes,freq,lo,hi
};

// Independent seeded trials per grid point, fanned out over `workers`
// threads (0 = hardware default). Results are independent of worker count
// and scheduling: trial (point g, index t) always runs with
// trial_seed(base_seed, g, t).
SweepReport sweep(const TrialConfig& base, const std::vector<double>& c_grid,
                  int trials_per_point, uint64_t base_seed, int workers = 0);

struct ThresholdProbe {
  double C = 0.0;
  int trials = 0;
  int successes = 0;
  double freq = 0.0;
};

struct ThresholdEstimate {
  double target = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<ThresholdProbe> probes;

  std::string to_json() const;
};

// Bisects C for the target success probability. Fresh seeds per probe
// (probe g uses trial seeds trial_seed(base, kThresholdProbeBase + g, t)).
// A non-bracketing initial interval is widened up to 8 times each way, then
// rejected with std::runtime_error. Returns as soon as hi - lo < tolerance;
// if the initial bracket is already narrower, it is returned untouched.
ThresholdEstimate estimate_threshold(const TrialConfig& base, double target,
                                     int trials_per_probe, double tolerance,
                                     uint64_t base_seed, int workers = 0,
                                     double c_lo = 1.0, double c_hi = 32.0);

}  // namespace comb
