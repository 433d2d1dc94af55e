#include "ntrust/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace ntrust {

void Objective::check_dimension(const Vector& x) const {
  if (x.size() != dimension())
    throw std::invalid_argument(name() + ": expected dimension " + std::to_string(dimension()) +
                                ", got " + std::to_string(x.size()));
}

namespace {

class QuadraticProblem final : public Objective {
 public:
  QuadraticProblem() : d_(8) {
    for (std::size_t i = 0; i < 8; ++i)
      d_[i] = std::pow(10.0, -5.0 + 0.25 * static_cast<double>(i));
  }

  std::size_t dimension() const override { return 8; }
  std::string name() const override { return "quadratic8"; }

  double value(const Vector& x) const override {
    check_dimension(x);
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) s += d_[i] * x[i] * x[i];
    return s;
  }

  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    Vector g(8);
    for (std::size_t i = 0; i < 8; ++i) g[i] = 2.0 * d_[i] * x[i];
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    check_dimension(x);
    Matrix h(8, 8);
    for (std::size_t i = 0; i < 8; ++i) h(i, i) = 2.0 * d_[i];
    return h;
  }

  std::optional<Vector> known_minimizer() const override { return Vector(8, 0.0); }
  std::optional<double> known_min_value() const override { return 0.0; }
  std::optional<Vector> default_start() const override {
    Vector x0(8, 0.0);
    x0[0] = 1000.0;
    return x0;
  }

 private:
  Vector d_;
};

class TridiagonalProblem final : public Objective {
 public:
  explicit TridiagonalProblem(std::size_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("tridiag: dimension must be >= 2");
  }

  std::size_t dimension() const override { return n_; }
  std::string name() const override { return "tridiag:" + std::to_string(n_); }

  // f = 1/2 (x_1 - 1)^2 + 1/2 sum r_i^4 with r_i = x_i - 2 x_{i+1}.
  double value(const Vector& x) const override {
    check_dimension(x);
    double s = 0.5 * (x[0] - 1.0) * (x[0] - 1.0);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double r = x[i] - 2.0 * x[i + 1];
      const double r2 = r * r;
      s += 0.5 * r2 * r2;
    }
    return s;
  }

  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    Vector g(n_, 0.0);
    g[0] = x[0] - 1.0;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double r = x[i] - 2.0 * x[i + 1];
      const double r3 = 2.0 * r * r * r;
      g[i] += r3;
      g[i + 1] -= 2.0 * r3;
    }
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    check_dimension(x);
    Matrix h(n_, n_);
    h(0, 0) = 1.0;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double r = x[i] - 2.0 * x[i + 1];
      const double r2 = 6.0 * r * r;
      h(i, i) += r2;
      h(i, i + 1) -= 2.0 * r2;
      h(i + 1, i) -= 2.0 * r2;
      h(i + 1, i + 1) += 4.0 * r2;
    }
    return h;
  }

  std::optional<Vector> known_minimizer() const override {
    Vector xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = std::pow(2.0, -static_cast<double>(i));
    return xs;
  }
  std::optional<double> known_min_value() const override { return 0.0; }
  std::optional<Vector> default_start() const override { return Vector(n_, 1.0); }

 private:
  std::size_t n_;
};

// Collection problem 271: f = sum_{i=1}^{6} 10 (16 - i) (x_i - 1)^2.
class S271 final : public Objective {
 public:
  std::size_t dimension() const override { return 6; }
  std::string name() const override { return "s271"; }

  double value(const Vector& x) const override {
    check_dimension(x);
    double s = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      const double t = x[i] - 1.0;
      s += weight(i) * t * t;
    }
    return s;
  }

  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    Vector g(6);
    for (std::size_t i = 0; i < 6; ++i) g[i] = 2.0 * weight(i) * (x[i] - 1.0);
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    check_dimension(x);
    Matrix h(6, 6);
    for (std::size_t i = 0; i < 6; ++i) h(i, i) = 2.0 * weight(i);
    return h;
  }

  std::optional<Vector> known_minimizer() const override { return Vector(6, 1.0); }
  std::optional<double> known_min_value() const override { return 0.0; }
  std::optional<Vector> default_start() const override { return Vector(6, 0.0); }

 private:
  static double weight(std::size_t i) { return 10.0 * (15.0 - static_cast<double>(i)); }
};

// Collection problem 289: f = 1 - exp(-sum x_i^2 / 60) in 30 variables.
class S289 final : public Objective {
 public:
  std::size_t dimension() const override { return 30; }
  std::string name() const override { return "s289"; }

  double value(const Vector& x) const override {
    check_dimension(x);
    return 1.0 - std::exp(-sumsq(x) / 60.0);
  }

  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    const double e = std::exp(-sumsq(x) / 60.0);
    Vector g(30);
    for (std::size_t i = 0; i < 30; ++i) g[i] = e * x[i] / 30.0;
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    check_dimension(x);
    const double e = std::exp(-sumsq(x) / 60.0);
    Matrix h(30, 30);
    for (std::size_t i = 0; i < 30; ++i) {
      for (std::size_t j = 0; j < 30; ++j) h(i, j) = -e * x[i] * x[j] / 900.0;
      h(i, i) += e / 30.0;
    }
    return h;
  }

  std::optional<Vector> known_minimizer() const override { return Vector(30, 0.0); }
  std::optional<double> known_min_value() const override { return 0.0; }
  std::optional<Vector> default_start() const override {
    Vector x0(30);
    for (std::size_t i = 0; i < 30; ++i) x0[i] = (i % 2 == 0) ? -1.03 : 1.07;
    return x0;
  }

 private:
  static double sumsq(const Vector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  }
};

// Collection problem 293: f = (sum i x_i^2)^2 in 50 variables.
class S293 final : public Objective {
 public:
  std::size_t dimension() const override { return 50; }
  std::string name() const override { return "s293"; }

  double value(const Vector& x) const override {
    check_dimension(x);
    const double s = weighted_sumsq(x);
    return s * s;
  }

  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    const double s = weighted_sumsq(x);
    Vector g(50);
    for (std::size_t i = 0; i < 50; ++i) g[i] = 4.0 * s * static_cast<double>(i + 1) * x[i];
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    check_dimension(x);
    const double s = weighted_sumsq(x);
    Matrix h(50, 50);
    for (std::size_t i = 0; i < 50; ++i) {
      const double wi = static_cast<double>(i + 1);
      for (std::size_t j = 0; j < 50; ++j) {
        const double wj = static_cast<double>(j + 1);
        h(i, j) = 8.0 * wi * wj * x[i] * x[j];
      }
      h(i, i) += 4.0 * s * wi;
    }
    return h;
  }

  std::optional<Vector> known_minimizer() const override { return Vector(50, 0.0); }
  std::optional<double> known_min_value() const override { return 0.0; }
  std::optional<Vector> default_start() const override { return Vector(50, 1.0); }

 private:
  static double weighted_sumsq(const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * x[i] * x[i];
    return s;
  }
};

}  // namespace

std::shared_ptr<const Objective> quadratic_problem() {
  return std::make_shared<QuadraticProblem>();
}

std::shared_ptr<const Objective> tridiagonal_problem(std::size_t n) {
  return std::make_shared<TridiagonalProblem>(n);
}

std::shared_ptr<const Objective> schittkowski_problem(int id) {
  switch (id) {
    case 271: return std::make_shared<S271>();
    case 289: return std::make_shared<S289>();
    case 293: return std::make_shared<S293>();
    default:
      throw std::invalid_argument("collection problem " + std::to_string(id) +
                                  " is not implemented (available: 271, 289, 293)");
  }
}

std::shared_ptr<const Objective> parse_problem(const std::string& id) {
  if (id == "quadratic8") return quadratic_problem();
  if (id.rfind("tridiag:", 0) == 0) {
    const std::string num = id.substr(8);
    std::size_t pos = 0;
    unsigned long n = 0;
    try {
      n = std::stoul(num, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid problem id: " + id);
    }
    if (pos != num.size()) throw std::invalid_argument("invalid problem id: " + id);
    return tridiagonal_problem(static_cast<std::size_t>(n));
  }
  if (id.size() > 1 && id[0] == 's' &&
      id.find_first_not_of("0123456789", 1) == std::string::npos) {
    int num = 0;
    try {
      num = std::stoi(id.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid problem id: " + id);
    }
    return schittkowski_problem(num);
  }
  throw std::invalid_argument("unknown problem id: " + id);
}

FiniteDifferenceReport finite_difference_check(const Objective& obj, const Vector& x, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("finite_difference_check: step must be positive and finite");
  const std::size_t n = obj.dimension();
  if (x.size() != n)
    throw std::invalid_argument("finite_difference_check: point has wrong dimension");

  const Vector g = obj.gradient(x);
  const Matrix hess = obj.hessian(x);

  Vector xp = x, xm = x;
  double grad_err = 0.0, grad_scale = 1.0, hess_err = 0.0, hess_scale = 1.0;
  for (double v : g) grad_scale = std::max(grad_scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) hess_scale = std::max(hess_scale, std::abs(hess(i, j)));

  for (std::size_t j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const double fd = (obj.value(xp) - obj.value(xm)) / (2.0 * h);
    grad_err = std::max(grad_err, std::abs(fd - g[j]));
    const Vector gp = obj.gradient(xp);
    const Vector gm = obj.gradient(xm);
    for (std::size_t i = 0; i < n; ++i) {
      const double fdh = (gp[i] - gm[i]) / (2.0 * h);
      hess_err = std::max(hess_err, std::abs(fdh - hess(i, j)));
    }
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return {grad_err / grad_scale, hess_err / hess_scale};
}

}  // namespace ntrust
