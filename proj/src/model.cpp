#include "ntrust/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntrust {

namespace {

void check_step(const QuadraticModel& m, const Vector& p) {
  if (p.size() != m.dimension())
    throw std::invalid_argument("model: step has wrong dimension");
}

}  // namespace

double evaluate(const QuadraticModel& m, const Vector& p) {
  check_step(m, p);
  Vector bp;
  linalg::matvec(m.b, p, bp);
  return m.f_noisy + linalg::dot(m.g_noisy, p) + 0.5 * linalg::dot(p, bp);
}

double predicted_reduction(const QuadraticModel& m, const Vector& p) {
  check_step(m, p);
  Vector bp;
  linalg::matvec(m.b, p, bp);
  return -(linalg::dot(m.g_noisy, p) + 0.5 * linalg::dot(p, bp));
}

double cauchy_decrease_bound(const QuadraticModel& m, double delta) {
  const double gnorm = linalg::norm2(m.g_noisy);
  const double bnorm = linalg::spectral_norm_sym(m.b, 1e-10, 500);
  const double reach = bnorm > 0.0 ? std::min(delta, gnorm / bnorm) : delta;
  return 0.5 * gnorm * reach;
}

}  // namespace ntrust
