#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ntrust/linalg.hpp"

namespace ntrust {

/// Twice continuously differentiable test objective with analytic
/// derivatives. Objectives are immutable after construction and safe to
/// share across threads.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::string name() const = 0;

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Matrix hessian(const Vector& x) const = 0;

  /// Exact minimizer / minimum value when known analytically.
  virtual std::optional<Vector> known_minimizer() const { return std::nullopt; }
  virtual std::optional<double> known_min_value() const { return std::nullopt; }
  /// Conventional start point for the problem, when one exists.
  virtual std::optional<Vector> default_start() const { return std::nullopt; }

 protected:
  void check_dimension(const Vector& x) const;
};

/// f(x) = x^T D x in 8 variables, D = diag(1e-5, 1e-4.75, ..., 1e-3.25);
/// condition number ~56. Conventional start (1000, 0, ..., 0).
std::shared_ptr<const Objective> quadratic_problem();

/// f(x) = 1/2 (x_1 - 1)^2 + 1/2 sum_{i=1}^{n-1} (x_i - 2 x_{i+1})^4 with
/// minimizer x*_i = 2^(1-i) and f* = 0. Requires n >= 2.
std::shared_ptr<const Objective> tridiagonal_problem(std::size_t n);

/// Unconstrained problems 271, 289 and 293 from the standard test
/// collection, with their conventional start points attached.
std::shared_ptr<const Objective> schittkowski_problem(int id);

/// Parses a problem id: "quadratic8", "tridiag:<N>", "s271", "s289", "s293".
std::shared_ptr<const Objective> parse_problem(const std::string& id);

struct FiniteDifferenceReport {
  double grad_rel_err = 0.0;  // max-norm, central differences of f
  double hess_rel_err = 0.0;  // max-norm, central differences of the gradient
};

/// Compares analytic derivatives against central differences with step h.
/// Throws std::invalid_argument unless h > 0 and finite.
FiniteDifferenceReport finite_difference_check(const Objective& obj, const Vector& x, double h);

}  // namespace ntrust
