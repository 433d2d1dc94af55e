#pragma once

#include <cstddef>
#include <vector>

namespace ntrust {

using Vector = std::vector<double>;

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

namespace linalg {

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double norm_inf(const Vector& x);
/// y += a * x
void axpy(double a, const Vector& x, Vector& y);
Vector scaled(const Vector& x, double a);
bool all_finite(const Vector& x);
bool all_finite(const Matrix& a);

/// Global switch for the OpenMP kernel variants (used by tests and the
/// benchmark; kernels fall back to the serial reference when disabled or
/// when the problem is too small to amortize thread startup).
bool parallel_enabled();
void set_parallel_enabled(bool on);

/// y = A x. The parallel variant distributes output rows across threads;
/// each element is reduced serially, so results are bitwise equal to the
/// serial reference for any thread count.
void matvec_serial(const Matrix& a, const Vector& x, Vector& y);
void matvec_parallel(const Matrix& a, const Vector& x, Vector& y);
void matvec(const Matrix& a, const Vector& x, Vector& y);

/// y = A^T x, same determinism contract as matvec.
void matvec_transpose_serial(const Matrix& a, const Vector& x, Vector& y);
void matvec_transpose_parallel(const Matrix& a, const Vector& x, Vector& y);
void matvec_transpose(const Matrix& a, const Vector& x, Vector& y);

/// out = A^T diag(lam) A for A (m x n), lam (m). Only the upper triangle is
/// accumulated (k-major order per row); the lower triangle is mirrored, so
/// the result is exactly symmetric. Parallel variant is bitwise equal to the
/// serial reference.
void scaled_gram_serial(const Matrix& a, const Vector& lam, Matrix& out);
void scaled_gram_parallel(const Matrix& a, const Vector& lam, Matrix& out);
void scaled_gram(const Matrix& a, const Vector& lam, Matrix& out);

/// Cholesky factorization A = L L^T (lower triangle). Returns false when A
/// is not numerically positive definite.
bool cholesky(const Matrix& a, Matrix& l);
/// Solves L L^T x = b given the factor from cholesky().
void cholesky_solve(const Matrix& l, const Vector& b, Vector& x);

/// Spectral norm of a symmetric matrix by power iteration on B^2 (immune to
/// +/- eigenvalue pairs). Converges from below; rel_tol is on successive
/// estimates.
double spectral_norm_sym(const Matrix& b, double rel_tol = 1e-10, int max_iters = 500);
/// Spectral norm of a general matrix by power iteration on A^T A.
double spectral_norm(const Matrix& a, double rel_tol = 1e-12, int max_iters = 500);
/// Frobenius norm.
double frobenius_norm(const Matrix& a);

}  // namespace linalg
}  // namespace ntrust
