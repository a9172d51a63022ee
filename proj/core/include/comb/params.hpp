#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace comb {

enum class ParamMode { paper_exact, engineering };

// Every derived constant the partition algorithm and its tail bounds use,
// computed from (n, k, D):
//
//   eps   = 1 / (D (10 + ln D))
//   C     = 600 / eps              (paper-exact; engineering mode takes the
//                                   caller's C instead)
//   p     = C ln n / n             (per layer)
//   m     = n / k
//   T     = floor(m p / 6), c = m p / T
//   gamma = (1 - 3 eps) alpha,  alpha = 1/3 unless overridden
//   beta  = (c gamma - 1)^2 / (4 c gamma)   (0 when c gamma <= 1; the bound
//                                            is vacuous in that regime)
//   q     = 2 exp(-beta T)
//
// log means natural log throughout. Engineering mode additionally clamps the
// default T to at least 1: T = 0 would make every threshold test vacuous and
// the procedure would degenerate to an arbitrary equipartition, which is not
// the algorithm under study. An explicit T override bypasses the clamp.
struct ParamSet {
  double D = 0.0;
  long long n = 0;
  long long k = 0;
  long long m = 0;
  double eps = 0.0;
  double C = 0.0;    // constant actually in effect (paper formula or caller's)
  double p = 0.0;    // per-layer edge probability
  long long T = 0;
  double c = 0.0;    // m p / T; 0 when T came out degenerate with m p = 0
  double alpha = 1.0 / 3.0;
  double gamma = 0.0;
  double beta = 0.0;
  double q = 0.0;
  ParamMode mode = ParamMode::engineering;

  bool cgamma_above_1() const { return c * gamma > 1.0; }
};

// Flags for the assumptions the analysis needs. Violations never abort an
// engineering run; they are reported so results can be read in context.
struct PreconditionReport {
  bool k_below_D_log_n = false;
  bool k_above_2_over_eps = false;
  bool D_above_2 = false;
  bool p_at_most_1 = false;
  bool T_at_least_1 = false;
  bool cgamma_above_1 = false;
  std::vector<std::string> messages;

  bool all_hold() const {
    return k_below_D_log_n && k_above_2_over_eps && D_above_2 && p_at_most_1 &&
           T_at_least_1 && cgamma_above_1;
  }
};

struct ParamOverrides {
  std::optional<double> C;      // engineering constant replacing 600/eps
  std::optional<long long> T;   // replaces floor(mp/6); c recomputed
  std::optional<double> p;      // replaces C log n / n (complete-graph runs)
  std::optional<double> alpha;  // replaces 1/3
};

// Derives all constants. Hard errors (std::invalid_argument): k does not
// divide n, nonpositive n/k/D, alpha outside (0,1], and T = 0 in paper-exact
// mode (the procedure is undefined there). Everything else is a flag.
std::pair<ParamSet, PreconditionReport> derive_params(
    long long n, long long k, double D, ParamMode mode,
    const ParamOverrides& overrides = {});

// Bernstein/Chernoff-type binomial tail bound: each of
// P(B(m, rho) > m rho + t) and P(B(m, rho) < m rho - t) is below
// exp(-min(t, t^2 / (m rho)) / 4). Requires m >= 1, 0 < rho < 1, t > 0.
double bernstein_tail(long long m, double rho, double t);

// q = 2 exp(-beta T). In paper-exact mode c gamma <= 1 is a hard error
// (std::domain_error); engineering mode returns the (vacuous) value and the
// caller can consult ParamSet::cgamma_above_1.
double q_bound(const ParamSet& ps);

}  // namespace comb
