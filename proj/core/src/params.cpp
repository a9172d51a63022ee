#include "comb/params.hpp"

#include <cmath>
#include <stdexcept>

namespace comb {

namespace {

std::string describe(long long n, long long k, double D) {
  return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) +
         ", D=" + std::to_string(D) + ")";
}

}  // namespace

std::pair<ParamSet, PreconditionReport> derive_params(
    long long n, long long k, double D, ParamMode mode,
    const ParamOverrides& overrides) {
  if (n < 1 || k < 1) throw std::invalid_argument("derive_params: n, k must be >= 1");
  if (k > n || n % k != 0)
    throw std::invalid_argument("derive_params: k must divide n " + describe(n, k, D));
  if (!(D > 0.0)) throw std::invalid_argument("derive_params: D must be positive");

  ParamSet ps;
  ps.D = D;
  ps.n = n;
  ps.k = k;
  ps.m = n / k;
  ps.mode = mode;
  ps.eps = 1.0 / (D * (10.0 + std::log(D)));

  ps.alpha = overrides.alpha.value_or(1.0 / 3.0);
  if (!(ps.alpha > 0.0 && ps.alpha <= 1.0))
    throw std::invalid_argument("derive_params: alpha must lie in (0, 1]");

  if (mode == ParamMode::engineering && overrides.C) {
    ps.C = *overrides.C;
    if (ps.C < 0.0) throw std::invalid_argument("derive_params: C must be nonnegative");
  } else {
    ps.C = 600.0 / ps.eps;
  }

  if (overrides.p) {
    if (!(*overrides.p >= 0.0 && *overrides.p <= 1.0))
      throw std::invalid_argument("derive_params: p override outside [0,1]");
    ps.p = *overrides.p;
  } else {
    ps.p = ps.C * std::log(static_cast<double>(n)) / static_cast<double>(n);
  }

  const double mp = static_cast<double>(ps.m) * ps.p;
  if (overrides.T) {
    if (*overrides.T < 1) throw std::invalid_argument("derive_params: T override must be >= 1");
    ps.T = *overrides.T;
  } else {
    ps.T = static_cast<long long>(std::floor(mp / 6.0));
    if (mode == ParamMode::paper_exact) {
      if (ps.T < 1)
        throw std::invalid_argument(
            "derive_params: T = floor(mp/6) = 0 in paper-exact mode; the "
            "procedure is undefined " + describe(n, k, D));
    } else if (ps.T < 1) {
      ps.T = 1;  // see ParamSet doc: keep the thresholds non-vacuous
    }
  }
  ps.c = mp > 0.0 ? mp / static_cast<double>(ps.T) : 0.0;

  ps.gamma = (1.0 - 3.0 * ps.eps) * ps.alpha;
  const double cg = ps.c * ps.gamma;
  ps.beta = cg > 1.0 ? (cg - 1.0) * (cg - 1.0) / (4.0 * cg) : 0.0;
  ps.q = 2.0 * std::exp(-ps.beta * static_cast<double>(ps.T));

  PreconditionReport rep;
  rep.k_below_D_log_n = static_cast<double>(k) < D * std::log(static_cast<double>(n));
  rep.k_above_2_over_eps = static_cast<double>(k) > 2.0 / ps.eps;
  rep.D_above_2 = D > 2.0;
  rep.p_at_most_1 = ps.p <= 1.0;
  rep.T_at_least_1 = ps.T >= 1;
  rep.cgamma_above_1 = cg > 1.0;

  if (!rep.k_below_D_log_n)
    rep.messages.push_back("k >= D log n: outside the regime the analysis covers");
  if (!rep.k_above_2_over_eps)
    rep.messages.push_back("k <= 2/eps: the blocks are large relative to eps*n");
  if (!rep.D_above_2) rep.messages.push_back("D <= 2");
  if (!rep.p_at_most_1)
    rep.messages.push_back("p > 1: constants too large for this n; not samplable");
  if (!rep.T_at_least_1) rep.messages.push_back("T < 1");
  if (!rep.cgamma_above_1)
    rep.messages.push_back("c*gamma <= 1: tail bound q is vacuous in this regime");

  return {ps, rep};
}

double bernstein_tail(long long m, double rho, double t) {
  if (m < 1) throw std::invalid_argument("bernstein_tail: m must be >= 1");
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("bernstein_tail: rho must lie in (0, 1)");
  if (!(t > 0.0)) throw std::invalid_argument("bernstein_tail: t must be positive");
  const double exponent = std::min(t, t * t / (static_cast<double>(m) * rho)) / 4.0;
  return std::exp(-exponent);
}

double q_bound(const ParamSet& ps) {
  if (ps.mode == ParamMode::paper_exact && !ps.cgamma_above_1())
    throw std::domain_error("q_bound: c*gamma <= 1 in paper-exact mode");
  return 2.0 * std::exp(-ps.beta * static_cast<double>(ps.T));
}

}  // namespace comb
