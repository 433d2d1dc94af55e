#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ntrust/theory.hpp"

using ntrust::TheoryConstants;

TEST_CASE("relaxation coefficient and simple pins") {
  // c2 = 0.5 gives r = 4; the quantities below were frozen from an
  // independent reference evaluation.
  const TheoryConstants tc = ntrust::compute_constants(0.1, 0.0, 0.1, 0.5, 2.0, 1.0);
  CHECK(tc.r == 4.0);
  CHECK(tc.mu == 0.0);
  CHECK(tc.beta == doctest::Approx(15.17893276880822).epsilon(1e-14));
  CHECK(tc.eta == doctest::Approx(7.58946638440411).epsilon(1e-14));
  CHECK(tc.gamma == doctest::Approx(7.58946638440411).epsilon(1e-14));
  CHECK(tc.delta_bar == doctest::Approx(7.58946638440411 / 4.0).epsilon(1e-14));
  CHECK(tc.c1_radius == doctest::Approx(15.17893276880822 / 2.0).epsilon(1e-14));
}

TEST_CASE("identities hold to near machine precision over a parameter grid") {
  int points = 0;
  for (double eps_f : {0.0, 1e-3, 0.1, 10.0}) {
    for (double eps_g : {0.0, 1e-4, 0.05, 2.0}) {
      for (double c0 : {0.05, 0.1, 0.25}) {
        for (double c2 : {0.3, 0.5, 0.9}) {
          for (double m : {1e-3, 1.0, 300.0}) {
            const double nu = 2.0;
            const TheoryConstants tc = ntrust::compute_constants(eps_f, eps_g, c0, c2, nu, m);
            ++points;
            // beta^2 - (r eps_g)^2 = 8 nu r^2 (1/c0 - 1) m eps_f. Once beta is
            // rounded, the small addend's low bits are gone, so the achievable
            // accuracy of the difference is relative to beta^2, not the addend.
            const double lhs = tc.beta * tc.beta - (tc.r * eps_g) * (tc.r * eps_g);
            const double rhs = 8.0 * nu * tc.r * tc.r * (1.0 / c0 - 1.0) * m * eps_f;
            const double scale = std::max({std::abs(rhs), tc.beta * tc.beta, 1e-300});
            CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
            // m r delta_bar = gamma
            CHECK(std::abs(m * tc.r * tc.delta_bar - tc.gamma) <=
                  1e-12 * std::max(1.0, std::abs(tc.gamma)));
            // gamma = eta + eps_g / 2 and the critical radius accessor agrees.
            CHECK(tc.gamma == tc.eta + tc.mu);
            CHECK(ntrust::critical_region_radius(tc) == tc.c1_radius);
            // eta solves eta^2 + r eps_g eta - 2 nu r^2 (1/c0 - 1) m eps_f = 0.
            const double resid = tc.eta * tc.eta + tc.r * eps_g * tc.eta -
                                 2.0 * nu * tc.r * tc.r * (1.0 / c0 - 1.0) * m * eps_f;
            CHECK(std::abs(resid) <= 1e-10 * std::max(1.0, tc.eta * tc.eta));
          }
        }
      }
    }
  }
  CHECK(points >= 100);
}

TEST_CASE("scaling laws") {
  // With eps_g = 0, beta ~ sqrt(eps_f): quadrupling eps_f doubles beta and eta.
  const TheoryConstants a = ntrust::compute_constants(0.1, 0.0, 0.1, 0.5, 2.0, 1.0);
  const TheoryConstants b = ntrust::compute_constants(0.4, 0.0, 0.1, 0.5, 2.0, 1.0);
  CHECK(b.beta == doctest::Approx(2.0 * a.beta).epsilon(1e-13));
  CHECK(b.eta == doctest::Approx(2.0 * a.eta).epsilon(1e-13));

  // With eps_f = 0 everything collapses onto the gradient-noise level:
  // beta = r eps_g, eta = 0, gamma = eps_g / 2, c1 = (r + 1) eps_g + beta / 2.
  const double eps_g = 0.37;
  const TheoryConstants c = ntrust::compute_constants(0.0, eps_g, 0.1, 0.5, 2.0, 1.0);
  CHECK(c.beta == doctest::Approx(4.0 * eps_g).epsilon(1e-14));
  CHECK(c.eta == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(c.gamma == doctest::Approx(eps_g / 2.0).epsilon(1e-13));
  CHECK(c.c1_radius == doctest::Approx(5.0 * eps_g + 2.0 * eps_g).epsilon(1e-14));

  // Noise-free: every constant is zero except r.
  const TheoryConstants z = ntrust::compute_constants(0.0, 0.0, 0.1, 0.5, 2.0, 1.0);
  CHECK(z.beta == 0.0);
  CHECK(z.eta == 0.0);
  CHECK(z.gamma == 0.0);
  CHECK(z.delta_bar == 0.0);
  CHECK(z.c1_radius == 0.0);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(ntrust::compute_constants(-1, 0, 0.1, 0.5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::compute_constants(0, -1, 0.1, 0.5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::compute_constants(0, 0, 0.0, 0.5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::compute_constants(0, 0, 0.6, 0.5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::compute_constants(0, 0, 0.1, 1.0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::compute_constants(0, 0, 0.1, 0.5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::compute_constants(0, 0, 0.1, 0.5, 2, 0), std::invalid_argument);

  CHECK(ntrust::curvature_constant(3.0, 1.0) == 2.0);
  CHECK_THROWS_AS(ntrust::curvature_constant(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::curvature_constant(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("level set bound pin and properties") {
  const TheoryConstants tc = ntrust::compute_constants(0.1, 0.01, 0.1, 0.5, 2.0, 1.0);
  const auto b = ntrust::level_set_bound(tc, 1.0);
  CHECK(b.g_term == doctest::Approx(115.12460507263329).epsilon(1e-13));
  CHECK(b.band == doctest::Approx(115.32460507263329).epsilon(1e-13));
  // band = 2 eps_f + max(g_term, r (1 - c0) eps_f) and here g_term dominates.
  CHECK(b.band == doctest::Approx(2.0 * 0.1 + b.g_term).epsilon(1e-14));

  // With a zero g_term contribution the floor takes over: eps_g = 0 and a
  // tiny eps_f keep g_term small but positive.
  const TheoryConstants tiny = ntrust::compute_constants(1e-12, 0.0, 0.1, 0.5, 2.0, 1.0);
  const auto bt = ntrust::level_set_bound(tiny, 1.0);
  CHECK(bt.band >= 2.0 * 1e-12);

  CHECK_THROWS_AS(ntrust::level_set_bound(tc, -1.0), std::invalid_argument);
}

TEST_CASE("curvature proxies at the known minimizers") {
  CHECK(ntrust::estimate_m(*ntrust::quadratic_problem()) ==
        doctest::Approx(1.1246826503806982e-3).epsilon(1e-10));
  CHECK(ntrust::estimate_m(*ntrust::tridiagonal_problem(200)) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ntrust::estimate_m(*ntrust::schittkowski_problem(271)) ==
        doctest::Approx(300.0).epsilon(1e-8));
  CHECK(ntrust::estimate_m(*ntrust::schittkowski_problem(289)) ==
        doctest::Approx(1.0 / 30.0).epsilon(1e-8));
  // Degenerate minimizer: the Hessian vanishes there.
  CHECK(ntrust::estimate_m(*ntrust::schittkowski_problem(293)) == 0.0);
}

TEST_CASE("log-ratio diagnostic") {
  // Sum of minima = 1e-3 against a bound of 10: R = log10(1e4) = 4.
  std::vector<double> minima(10, 1e-4);
  CHECK(ntrust::r_diagnostic(10.0, minima) == doctest::Approx(4.0).epsilon(1e-12));
  // Equal bound and sum: R = 0.
  CHECK(ntrust::r_diagnostic(1e-3, minima) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(ntrust::r_diagnostic(0.0, minima), std::invalid_argument);
  CHECK_THROWS_AS(ntrust::r_diagnostic(1.0, std::vector<double>(9, 1.0)),
                  std::invalid_argument);
  std::vector<double> with_zero(10, 1.0);
  with_zero[3] = 0.0;
  CHECK_THROWS_AS(ntrust::r_diagnostic(1.0, with_zero), std::invalid_argument);
  std::vector<double> with_nan(10, 1.0);
  with_nan[7] = std::nan("");
  CHECK_THROWS_AS(ntrust::r_diagnostic(1.0, with_nan), std::invalid_argument);
}
