#include "ntrust/linalg.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ntrust::linalg {

namespace {

std::atomic<bool> g_parallel{true};

// Work thresholds below which the OpenMP variants don't pay for themselves.
constexpr std::size_t kMatvecParallelMin = 256;
constexpr std::size_t kGramParallelMin = 48;

}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

double dot(const Vector& x, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double a, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vector scaled(const Vector& x, double a) {
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i];
  return y;
}

bool all_finite(const Vector& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const Matrix& a) {
  const double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(p[i])) return false;
  return true;
}

void matvec_serial(const Matrix& a, const Vector& x, Vector& y) {
  const std::size_t m = a.rows(), n = a.cols();
  y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
}

void matvec_parallel(const Matrix& a, const Vector& x, Vector& y) {
  const std::size_t m = a.rows(), n = a.cols();
  y.assign(m, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
}

void matvec(const Matrix& a, const Vector& x, Vector& y) {
  if (parallel_enabled() && a.rows() >= kMatvecParallelMin)
    matvec_parallel(a, x, y);
  else
    matvec_serial(a, x, y);
}

void matvec_transpose_serial(const Matrix& a, const Vector& x, Vector& y) {
  const std::size_t m = a.rows(), n = a.cols();
  y.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += a(k, j) * x[k];
    y[j] = s;
  }
}

void matvec_transpose_parallel(const Matrix& a, const Vector& x, Vector& y) {
  const std::size_t m = a.rows(), n = a.cols();
  y.assign(n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += a(k, j) * x[k];
    y[j] = s;
  }
}

void matvec_transpose(const Matrix& a, const Vector& x, Vector& y) {
  if (parallel_enabled() && a.cols() >= kMatvecParallelMin)
    matvec_transpose_parallel(a, x, y);
  else
    matvec_transpose_serial(a, x, y);
}

namespace {

// One output row of A^T diag(lam) A, upper-triangle part. k runs in a fixed
// serial order so the sum is schedule-independent.
inline void gram_row(const Matrix& a, const Vector& lam, Matrix& out, std::size_t i) {
  const std::size_t m = a.rows(), n = a.cols();
  double* oi = out.row(i);
  for (std::size_t j = i; j < n; ++j) oi[j] = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double* ak = a.row(k);
    const double t = lam[k] * ak[i];
    for (std::size_t j = i; j < n; ++j) oi[j] += t * ak[j];
  }
}

inline void gram_mirror(Matrix& out) {
  const std::size_t n = out.rows();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
}

}  // namespace

void scaled_gram_serial(const Matrix& a, const Vector& lam, Matrix& out) {
  const std::size_t n = a.cols();
  out = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) gram_row(a, lam, out, i);
  gram_mirror(out);
}

void scaled_gram_parallel(const Matrix& a, const Vector& lam, Matrix& out) {
  const std::size_t n = a.cols();
  out = Matrix(n, n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) gram_row(a, lam, out, i);
  gram_mirror(out);
}

void scaled_gram(const Matrix& a, const Vector& lam, Matrix& out) {
  if (parallel_enabled() && a.cols() >= kGramParallelMin)
    scaled_gram_parallel(a, lam, out);
  else
    scaled_gram_serial(a, lam, out);
}

bool cholesky(const Matrix& a, Matrix& l) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("cholesky: matrix must be square");
  l = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double lj = std::sqrt(d);
    l(j, j) = lj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / lj;
    }
  }
  return true;
}

void cholesky_solve(const Matrix& l, const Vector& b, Vector& x) {
  const std::size_t n = l.rows();
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  x.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
}

namespace {

double largest_column_start(const Matrix& b, Vector& v) {
  const std::size_t n = b.cols();
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i) s += b(i, j) * b(i, j);
    if (s > best_norm) {
      best_norm = s;
      best = j;
    }
  }
  v.assign(b.rows(), 0.0);
  for (std::size_t i = 0; i < b.rows(); ++i) v[i] = b(i, best);
  return std::sqrt(best_norm);
}

void normalize(Vector& v, double nrm) {
  const double inv = 1.0 / nrm;
  for (double& c : v) c *= inv;
}

}  // namespace

double spectral_norm_sym(const Matrix& b, double rel_tol, int max_iters) {
  Vector v;
  const double seed_norm = largest_column_start(b, v);
  if (seed_norm == 0.0) return 0.0;
  normalize(v, seed_norm);
  Vector w, w2;
  double est = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    matvec(b, v, w);
    matvec(b, w, w2);
    const double nrm = norm2(w2);  // = ||B^2 v|| -> lambda_max(B^2)
    if (nrm == 0.0) return 0.0;
    const double next = std::sqrt(nrm);
    const bool done = std::abs(next - est) <= rel_tol * std::max(next, 1e-300);
    est = next;
    v = w2;
    normalize(v, nrm);
    if (done) break;
  }
  return est;
}

double spectral_norm(const Matrix& a, double rel_tol, int max_iters) {
  const std::size_t n = a.cols();
  Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector av, w;
  double est = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    matvec(a, v, av);
    matvec_transpose(a, av, w);
    double nrm = norm2(w);  // = ||A^T A v|| -> sigma_max^2
    if (nrm == 0.0) {
      // ones-vector start can be orthogonal to the top singular vector;
      // retry from the basis vector hitting A's largest column, else A = 0.
      std::size_t best = 0;
      double best_norm = -1.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
        if (s > best_norm) {
          best_norm = s;
          best = j;
        }
      }
      if (best_norm <= 0.0) return 0.0;
      v.assign(n, 0.0);
      v[best] = 1.0;
      matvec(a, v, av);
      matvec_transpose(a, av, w);
      nrm = norm2(w);
      if (nrm == 0.0) return 0.0;
    }
    const double next = std::sqrt(nrm);
    const bool done = std::abs(next - est) <= rel_tol * std::max(next, 1e-300);
    est = next;
    v = w;
    normalize(v, nrm);
    if (done) break;
  }
  return est;  // est = sqrt(lambda_max(A^T A)) = sigma_max
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  const double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) s += p[i] * p[i];
  return std::sqrt(s);
}

}  // namespace ntrust::linalg
