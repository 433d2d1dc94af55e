#pragma once

#include <string>

#include "ntrust/model.hpp"

namespace ntrust {

enum class SolverKind { cauchy, dogleg, newton_cg };

SolverKind parse_solver(const std::string& name);
std::string to_string(SolverKind s);

struct SubproblemSolution {
  Vector p;
  double predicted_reduction = 0.0;
  bool boundary_hit = false;
  SolverKind solver = SolverKind::cauchy;
  /// Zero noisy gradient: the step is 0 and carries no model decrease.
  bool degenerate = false;
  /// dogleg only: B was not positive definite and the Cauchy step was used.
  bool cauchy_fallback = false;
};

/// Exact minimizer of the model along -g within radius delta.
SubproblemSolution cauchy_step(const QuadraticModel& m, double delta);

/// Classical two-segment path step; requires positive definite B and falls
/// back to cauchy_step (flagged) when the Cholesky factorization fails.
SubproblemSolution dogleg(const QuadraticModel& m, double delta);

/// Truncated conjugate gradient: starts at p = 0, follows negative
/// curvature to the boundary, stops on boundary crossing, on residual
/// <= tol * max(1, ||g||), or after n iterations.
SubproblemSolution newton_cg(const QuadraticModel& m, double delta, double tol = 1e-8);

SubproblemSolution solve_subproblem(const QuadraticModel& m, double delta, SolverKind solver,
                                    double cg_tol = 1e-8);

}  // namespace ntrust
