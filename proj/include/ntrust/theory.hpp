#pragma once

#include <vector>

#include "ntrust/problems.hpp"

namespace ntrust {

/// Constants governing the noise-tolerant method's neighborhood-of-
/// criticality guarantees, derived from the noise bounds, the acceptance
/// parameters and a curvature constant m.
struct TheoryConstants {
  // inputs
  double eps_f = 0.0;
  double eps_g = 0.0;
  double c0 = 0.0;
  double c2 = 0.0;
  double nu = 0.0;
  double m = 0.0;
  // derived
  double r = 0.0;          // ratio relaxation 2 / (1 - c2)
  double mu = 0.0;         // eps_g / 2
  double beta = 0.0;       // sqrt((r eps_g)^2 + 8 nu r^2 (1/c0 - 1) m eps_f)
  double eta = 0.0;        // (-r eps_g + beta) / 2
  double gamma = 0.0;      // eta + mu
  double delta_bar = 0.0;  // gamma / (r m): radius scale the method maintains
  double c1_radius = 0.0;  // (r+1) eps_g + beta/2: critical gradient-norm level
};

/// Requires eps_f, eps_g >= 0, 0 < c0 <= c2 < 1, nu > 1, m > 0.
TheoryConstants compute_constants(double eps_f, double eps_g, double c0, double c2, double nu,
                                  double m);

/// Curvature constant from the gradient Lipschitz constant and the bound on
/// the model Hessians: (lipschitz_g + hessian_bound) / 2.
double curvature_constant(double lipschitz_g, double hessian_bound);

/// Gradient-norm level below which iterates return infinitely often.
double critical_region_radius(const TheoryConstants& tc);

struct LevelSetBound {
  double g_term = 0.0;  // growth term from one excursion above the level
  double band = 0.0;    // 2 eps_f + max(g_term, r (1 - c0) eps_f)
};

/// Bound on how far the noisy f can rise above its value at entry into the
/// critical region; lipschitz_g is the gradient Lipschitz constant.
LevelSetBound level_set_bound(const TheoryConstants& tc, double lipschitz_g);

/// Curvature proxy used by the experiment protocol: spectral norm of the
/// Hessian at the known minimizer (power iteration, rel tol 1e-8). Throws
/// when the problem has no known minimizer.
double estimate_m(const Objective& obj);

/// R = log10(c_bound / sum of per-seed minima). Requires exactly 10 minima,
/// each positive and finite, and c_bound > 0.
double r_diagnostic(double c_bound, const std::vector<double>& per_seed_minima);

}  // namespace ntrust
