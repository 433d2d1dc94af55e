#include "ntrust/subproblem.hpp"

#include <cmath>
#include <stdexcept>

namespace ntrust {

SolverKind parse_solver(const std::string& name) {
  if (name == "cauchy") return SolverKind::cauchy;
  if (name == "dogleg") return SolverKind::dogleg;
  if (name == "newton_cg") return SolverKind::newton_cg;
  throw std::invalid_argument("unknown solver: " + name);
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::cauchy: return "cauchy";
    case SolverKind::dogleg: return "dogleg";
    case SolverKind::newton_cg: return "newton_cg";
  }
  return "?";
}

namespace {

void check_radius(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("subproblem: radius must be positive and finite");
}

SubproblemSolution zero_step(const QuadraticModel& m, SolverKind solver) {
  SubproblemSolution sol;
  sol.p.assign(m.dimension(), 0.0);
  sol.solver = solver;
  sol.degenerate = true;
  return sol;
}

// Positive root of ||p + tau d|| = delta given ||p|| < delta, in the
// cancellation-free form.
double boundary_tau(const Vector& p, const Vector& d, double delta) {
  const double dd = linalg::dot(d, d);
  const double pd = linalg::dot(p, d);
  const double pp = linalg::dot(p, p);
  const double s = std::sqrt(pd * pd + dd * (delta * delta - pp));
  if (pd < 0.0) return (s - pd) / dd;
  return (delta * delta - pp) / (pd + s);
}

}  // namespace

SubproblemSolution cauchy_step(const QuadraticModel& m, double delta) {
  check_radius(delta);
  SubproblemSolution sol;
  sol.solver = SolverKind::cauchy;
  const double gnorm = linalg::norm2(m.g_noisy);
  if (gnorm == 0.0) return zero_step(m, SolverKind::cauchy);

  Vector bg;
  linalg::matvec(m.b, m.g_noisy, bg);
  const double gbg = linalg::dot(m.g_noisy, bg);
  double tau = 1.0;
  sol.boundary_hit = true;
  if (gbg > 0.0) {
    const double interior = gnorm * gnorm * gnorm / (delta * gbg);
    if (interior < 1.0) {
      tau = interior;
      sol.boundary_hit = false;
    }
  }
  sol.p = linalg::scaled(m.g_noisy, -tau * delta / gnorm);
  sol.predicted_reduction = predicted_reduction(m, sol.p);
  return sol;
}

SubproblemSolution dogleg(const QuadraticModel& m, double delta) {
  check_radius(delta);
  const double gnorm = linalg::norm2(m.g_noisy);
  if (gnorm == 0.0) return zero_step(m, SolverKind::dogleg);

  Matrix l;
  Vector pb;
  bool spd = linalg::cholesky(m.b, l);
  if (spd) {
    linalg::cholesky_solve(l, linalg::scaled(m.g_noisy, -1.0), pb);
    spd = linalg::all_finite(pb);
  }
  if (!spd) {
    SubproblemSolution sol = cauchy_step(m, delta);
    sol.solver = SolverKind::dogleg;
    sol.cauchy_fallback = true;
    return sol;
  }

  SubproblemSolution sol;
  sol.solver = SolverKind::dogleg;
  if (linalg::norm2(pb) <= delta) {
    sol.p = pb;
    sol.predicted_reduction = predicted_reduction(m, sol.p);
    return sol;
  }

  Vector bg;
  linalg::matvec(m.b, m.g_noisy, bg);
  const double gbg = linalg::dot(m.g_noisy, bg);  // > 0 for SPD B, g != 0
  const Vector pu = linalg::scaled(m.g_noisy, -(gnorm * gnorm) / gbg);
  const double punorm = linalg::norm2(pu);
  sol.boundary_hit = true;
  if (punorm >= delta) {
    sol.p = linalg::scaled(m.g_noisy, -delta / gnorm);
  } else {
    Vector leg(pu.size());
    for (std::size_t i = 0; i < pu.size(); ++i) leg[i] = pb[i] - pu[i];
    const double tau = boundary_tau(pu, leg, delta);
    sol.p = pu;
    linalg::axpy(tau, leg, sol.p);
  }
  sol.predicted_reduction = predicted_reduction(m, sol.p);
  return sol;
}

SubproblemSolution newton_cg(const QuadraticModel& m, double delta, double tol) {
  check_radius(delta);
  const std::size_t n = m.dimension();
  const double gnorm = linalg::norm2(m.g_noisy);
  if (gnorm == 0.0) return zero_step(m, SolverKind::newton_cg);

  SubproblemSolution sol;
  sol.solver = SolverKind::newton_cg;
  sol.p.assign(n, 0.0);
  const double stop = tol * std::max(1.0, gnorm);
  if (gnorm <= stop) {
    sol.predicted_reduction = 0.0;
    return sol;
  }

  Vector r = m.g_noisy;  // residual g + B p at p = 0
  Vector d = linalg::scaled(r, -1.0);
  double rr = linalg::dot(r, r);
  Vector bd, trial;
  for (std::size_t j = 0; j < n; ++j) {
    linalg::matvec(m.b, d, bd);
    const double dbd = linalg::dot(d, bd);
    if (dbd <= 0.0) {
      const double tau = boundary_tau(sol.p, d, delta);
      linalg::axpy(tau, d, sol.p);
      sol.boundary_hit = true;
      break;
    }
    const double alpha = rr / dbd;
    trial = sol.p;
    linalg::axpy(alpha, d, trial);
    if (linalg::norm2(trial) >= delta) {
      const double tau = boundary_tau(sol.p, d, delta);
      linalg::axpy(tau, d, sol.p);
      sol.boundary_hit = true;
      break;
    }
    sol.p = trial;
    linalg::axpy(alpha, bd, r);
    const double rr_next = linalg::dot(r, r);
    if (std::sqrt(rr_next) <= stop) break;
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) d[i] = -r[i] + beta * d[i];
    rr = rr_next;
  }
  sol.predicted_reduction = predicted_reduction(m, sol.p);
  return sol;
}

SubproblemSolution solve_subproblem(const QuadraticModel& m, double delta, SolverKind solver,
                                    double cg_tol) {
  switch (solver) {
    case SolverKind::cauchy: return cauchy_step(m, delta);
    case SolverKind::dogleg: return dogleg(m, delta);
    case SolverKind::newton_cg: return newton_cg(m, delta, cg_tol);
  }
  throw std::invalid_argument("unknown solver");
}

}  // namespace ntrust
