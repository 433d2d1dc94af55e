#include "ntrust/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace ntrust {

TheoryConstants compute_constants(double eps_f, double eps_g, double c0, double c2, double nu,
                                  double m) {
  if (!(eps_f >= 0.0) || !(eps_g >= 0.0) || !std::isfinite(eps_f) || !std::isfinite(eps_g))
    throw std::invalid_argument("theory: noise bounds must be nonnegative finite");
  if (!(c0 > 0.0 && c0 <= c2 && c2 < 1.0))
    throw std::invalid_argument("theory: need 0 < c0 <= c2 < 1");
  if (!(nu > 1.0) || !std::isfinite(nu)) throw std::invalid_argument("theory: need nu > 1");
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("theory: need m > 0");

  TheoryConstants tc;
  tc.eps_f = eps_f;
  tc.eps_g = eps_g;
  tc.c0 = c0;
  tc.c2 = c2;
  tc.nu = nu;
  tc.m = m;
  tc.r = 2.0 / (1.0 - c2);
  tc.mu = 0.5 * eps_g;
  const double reg = tc.r * eps_g;
  tc.beta = std::sqrt(reg * reg + 8.0 * nu * tc.r * tc.r * (1.0 / c0 - 1.0) * m * eps_f);
  tc.eta = 0.5 * (-reg + tc.beta);
  tc.gamma = tc.eta + tc.mu;
  tc.delta_bar = tc.gamma / (tc.r * m);
  tc.c1_radius = (tc.r + 1.0) * eps_g + 0.5 * tc.beta;
  return tc;
}

double curvature_constant(double lipschitz_g, double hessian_bound) {
  if (!(lipschitz_g >= 0.0) || !std::isfinite(lipschitz_g) || !(hessian_bound >= 0.0) ||
      !std::isfinite(hessian_bound))
    throw std::invalid_argument("theory: curvature inputs must be nonnegative finite");
  return 0.5 * (lipschitz_g + hessian_bound);
}

double critical_region_radius(const TheoryConstants& tc) { return tc.c1_radius; }

LevelSetBound level_set_bound(const TheoryConstants& tc, double lipschitz_g) {
  if (!(lipschitz_g >= 0.0) || !std::isfinite(lipschitz_g))
    throw std::invalid_argument("theory: lipschitz constant must be nonnegative finite");
  const double t = tc.nu * tc.nu * tc.gamma / ((tc.nu - 1.0) * tc.r * tc.m);
  LevelSetBound b;
  b.g_term = ((tc.r + 1.0) * tc.eps_g + tc.gamma + lipschitz_g * t) * t;
  b.band = 2.0 * tc.eps_f + std::max(b.g_term, tc.r * (1.0 - tc.c0) * tc.eps_f);
  return b;
}

double estimate_m(const Objective& obj) {
  const auto xs = obj.known_minimizer();
  if (!xs) throw std::invalid_argument("estimate_m: " + obj.name() + " has no known minimizer");
  const Matrix h = obj.hessian(*xs);
  return linalg::spectral_norm_sym(h, 1e-8, 1000);
}

double r_diagnostic(double c_bound, const std::vector<double>& per_seed_minima) {
  if (per_seed_minima.size() != 10)
    throw std::invalid_argument("r_diagnostic: exactly 10 per-seed minima required");
  if (!(c_bound > 0.0) || !std::isfinite(c_bound))
    throw std::invalid_argument("r_diagnostic: bound must be positive and finite");
  double sum = 0.0;
  for (double v : per_seed_minima) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("r_diagnostic: minima must be positive and finite");
    sum += v;
  }
  return std::log10(c_bound / sum);
}

}  // namespace ntrust
