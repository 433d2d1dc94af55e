#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstring>

#include "ntrust/linalg.hpp"
#include "ntrust/noise.hpp"

using ntrust::Matrix;
using ntrust::Vector;
namespace la = ntrust::linalg;

namespace {

constexpr std::uint32_t kTestDrawKind = 9;

double u(std::uint64_t seed, std::uint64_t lane) {
  return 2.0 * ntrust::rng::uniform01(ntrust::rng::keyed_hash(seed, 0, kTestDrawKind, lane)) -
         1.0;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = u(seed, i * cols + j);
  return a;
}

Vector random_vector(std::size_t n, std::uint64_t seed) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = u(seed, 1000000 + i);
  return v;
}

Eigen::MatrixXd to_eigen(const Matrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  return e;
}

Eigen::VectorXd to_eigen(const Vector& v) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
  return e;
}

Matrix symmetrized(const Matrix& a) {
  Matrix s(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

}  // namespace

TEST_CASE("vector kernels agree with Eigen") {
  for (std::size_t n : {1u, 2u, 9u, 64u}) {
    Vector x = random_vector(n, 10 + n);
    Vector y = random_vector(n, 20 + n);
    Eigen::VectorXd ex = to_eigen(x), ey = to_eigen(y);
    CHECK(la::dot(x, y) == doctest::Approx(ex.dot(ey)).epsilon(1e-14));
    CHECK(la::norm2(x) == doctest::Approx(ex.norm()).epsilon(1e-14));
    CHECK(la::norm_inf(x) == doctest::Approx(ex.cwiseAbs().maxCoeff()).epsilon(1e-14));
    Vector z = y;
    la::axpy(2.5, x, z);
    Eigen::VectorXd ez = ey + 2.5 * ex;
    for (std::size_t i = 0; i < n; ++i)
      CHECK(z[i] == doctest::Approx(ez(static_cast<Eigen::Index>(i))).epsilon(1e-14));
  }
}

TEST_CASE("matvec matches Eigen and parallel variant is bitwise identical") {
  for (std::size_t rows : {1u, 3u, 48u, 200u, 257u}) {
    for (std::size_t cols : {1u, 5u, 200u}) {
      Matrix a = random_matrix(rows, cols, rows * 1000 + cols);
      Vector x = random_vector(cols, rows + cols);
      Vector xs = random_vector(rows, 3 * rows + cols);

      Vector y_s, y_p, yt_s, yt_p;
      la::matvec_serial(a, x, y_s);
      la::matvec_parallel(a, x, y_p);
      la::matvec_transpose_serial(a, xs, yt_s);
      la::matvec_transpose_parallel(a, xs, yt_p);

      REQUIRE(y_s.size() == y_p.size());
      CHECK(std::memcmp(y_s.data(), y_p.data(), y_s.size() * sizeof(double)) == 0);
      REQUIRE(yt_s.size() == yt_p.size());
      CHECK(std::memcmp(yt_s.data(), yt_p.data(), yt_s.size() * sizeof(double)) == 0);

      Eigen::VectorXd ref = to_eigen(a) * to_eigen(x);
      Eigen::VectorXd reft = to_eigen(a).transpose() * to_eigen(xs);
      for (std::size_t i = 0; i < rows; ++i)
        CHECK(y_s[i] == doctest::Approx(ref(static_cast<Eigen::Index>(i))).epsilon(1e-12));
      for (std::size_t j = 0; j < cols; ++j)
        CHECK(yt_s[j] == doctest::Approx(reft(static_cast<Eigen::Index>(j))).epsilon(1e-12));
    }
  }
}

TEST_CASE("scaled_gram matches Eigen, is exactly symmetric, parallel bitwise identical") {
  for (std::size_t n : {2u, 7u, 48u, 120u}) {
    Matrix a = random_matrix(n, n, 500 + n);
    Vector lam = random_vector(n, 600 + n);

    Matrix g_s, g_p;
    la::scaled_gram_serial(a, lam, g_s);
    la::scaled_gram_parallel(a, lam, g_p);
    CHECK(std::memcmp(g_s.data(), g_p.data(), g_s.size() * sizeof(double)) == 0);

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(g_s(i, j) == g_s(j, i));  // bitwise

    Eigen::MatrixXd ea = to_eigen(a);
    Eigen::MatrixXd ref = ea.transpose() * to_eigen(lam).asDiagonal() * ea;
    double scale = ref.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(g_s(i, j) - ref(static_cast<Eigen::Index>(i),
                                       static_cast<Eigen::Index>(j))) <= 1e-13 * scale);
  }
}

TEST_CASE("dispatch honours the global parallel switch") {
  const bool was = la::parallel_enabled();
  Matrix a = random_matrix(300, 300, 3);
  Vector x = random_vector(300, 4);
  Vector y1, y2;
  la::set_parallel_enabled(false);
  CHECK_FALSE(la::parallel_enabled());
  la::matvec(a, x, y1);
  la::set_parallel_enabled(true);
  CHECK(la::parallel_enabled());
  la::matvec(a, x, y2);
  CHECK(std::memcmp(y1.data(), y2.data(), y1.size() * sizeof(double)) == 0);
  la::set_parallel_enabled(was);
}

TEST_CASE("cholesky factorization and solve match Eigen") {
  for (std::size_t n : {1u, 4u, 30u}) {
    Matrix c = random_matrix(n, n, 700 + n);
    // SPD: C^T C / n + I
    Matrix spd(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += c(k, i) * c(k, j);
        spd(i, j) = s / static_cast<double>(n) + (i == j ? 1.0 : 0.0);
      }

    Matrix l;
    REQUIRE(la::cholesky(spd, l));
    Eigen::MatrixXd el = to_eigen(spd).llt().matrixL();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        CHECK(l(i, j) == doctest::Approx(el(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j)))
                             .epsilon(1e-10));

    Vector b = random_vector(n, 800 + n);
    Vector x;
    la::cholesky_solve(l, b, x);
    Eigen::VectorXd ex = to_eigen(spd).llt().solve(to_eigen(b));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(x[i] == doctest::Approx(ex(static_cast<Eigen::Index>(i))).epsilon(1e-9));
  }
}

TEST_CASE("cholesky rejects indefinite and semidefinite matrices") {
  Matrix ind(2, 2);
  ind(0, 0) = 1.0;
  ind(1, 1) = -1.0;
  Matrix l;
  CHECK_FALSE(la::cholesky(ind, l));

  Matrix zero(3, 3);
  CHECK_FALSE(la::cholesky(zero, l));

  Matrix rect(2, 3);
  CHECK_THROWS_AS(la::cholesky(rect, l), std::invalid_argument);
}

TEST_CASE("spectral_norm_sym matches Eigen eigenvalues") {
  SUBCASE("random symmetric matrices") {
    for (std::size_t n : {2u, 5u, 40u}) {
      Matrix b = symmetrized(random_matrix(n, n, 900 + n));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(b));
      double ref = es.eigenvalues().cwiseAbs().maxCoeff();
      CHECK(la::spectral_norm_sym(b) == doctest::Approx(ref).epsilon(1e-8));
    }
  }
  SUBCASE("dominant negative eigenvalue") {
    Matrix b(2, 2);
    b(0, 0) = -5.0;
    b(1, 1) = 1.0;
    CHECK(la::spectral_norm_sym(b) == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("plus-minus pair (power iteration on B itself would stall)") {
    Matrix b(2, 2);
    b(0, 1) = 3.0;
    b(1, 0) = 3.0;  // eigenvalues +/-3
    CHECK(la::spectral_norm_sym(b) == doctest::Approx(3.0).epsilon(1e-10));
  }
  SUBCASE("zero matrix") { CHECK(la::spectral_norm_sym(Matrix(4, 4)) == 0.0); }
}

TEST_CASE("spectral_norm matches Eigen singular values") {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{3, 3},
                            {7, 3},
                            {3, 7},
                            {40, 40}}) {
    Matrix a = random_matrix(rows, cols, rows * 31 + cols);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    double ref = svd.singularValues()(0);
    CHECK(la::spectral_norm(a) == doctest::Approx(ref).epsilon(1e-9));
  }
  CHECK(la::spectral_norm(Matrix(3, 5)) == 0.0);
}

TEST_CASE("frobenius_norm matches Eigen") {
  Matrix a = random_matrix(6, 4, 77);
  CHECK(la::frobenius_norm(a) == doctest::Approx(to_eigen(a).norm()).epsilon(1e-14));
}

TEST_CASE("all_finite flags non-finite entries") {
  Vector v = {1.0, 2.0};
  CHECK(la::all_finite(v));
  v[1] = std::nan("");
  CHECK_FALSE(la::all_finite(v));
  Matrix a(2, 2);
  CHECK(la::all_finite(a));
  a(1, 0) = std::numeric_limits<double>::infinity();
  CHECK_FALSE(la::all_finite(a));
}
