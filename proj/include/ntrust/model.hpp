#pragma once

#include "ntrust/linalg.hpp"

namespace ntrust {

/// Local quadratic model m(p) = f + g^T p + 1/2 p^T B p built from noisy
/// oracle values; B is symmetric but may be indefinite.
struct QuadraticModel {
  double f_noisy = 0.0;
  Vector g_noisy;
  Matrix b;

  std::size_t dimension() const { return g_noisy.size(); }
};

/// m(p).
double evaluate(const QuadraticModel& m, const Vector& p);

/// m(0) - m(p) = -(g^T p + 1/2 p^T B p).
double predicted_reduction(const QuadraticModel& m, const Vector& p);

/// Guaranteed decrease of the best gradient-direction step:
/// 1/2 ||g|| min(delta, ||g|| / ||B||), with ||B|| the spectral norm by
/// power iteration (tolerance 1e-10); ||B|| = 0 uses delta alone.
double cauchy_decrease_bound(const QuadraticModel& m, double delta);

}  // namespace ntrust
