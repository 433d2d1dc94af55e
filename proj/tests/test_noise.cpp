#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ntrust/linalg.hpp"
#include "ntrust/noise.hpp"

using ntrust::Matrix;
using ntrust::NoiseFamily;
using ntrust::NoiseSpec;
using ntrust::NoiseStream;
using ntrust::Vector;

namespace {

NoiseSpec make_spec(NoiseFamily family, double ef, double eg, double eb,
                    std::uint64_t seed = 17) {
  NoiseSpec s;
  s.family = family;
  s.eps_f = ef;
  s.eps_g = eg;
  s.eps_b = eb;
  s.seed = seed;
  return s;
}

double eigen_sym_norm(const Matrix& b) {
  Eigen::MatrixXd e(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) e(i, j) = b(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("draws are pure functions of (seed, counter)") {
  NoiseStream s(make_spec(NoiseFamily::uniform, 1.0, 1.0, 1.0));
  s.seek(5);
  const double f1 = s.function_noise();
  const Vector g1 = s.gradient_noise(4);
  const Matrix b1 = s.hessian_noise(4);
  // Re-query without advancing: identical.
  CHECK(s.function_noise() == f1);
  CHECK(s.gradient_noise(4) == g1);
  CHECK(s.hessian_noise(4) == b1);
  // Different counter: different values.
  s.advance();
  CHECK(s.counter() == 6);
  CHECK(s.function_noise() != f1);
  CHECK(s.gradient_noise(4) != g1);
  // Back to the same counter: identical again.
  s.seek(5);
  CHECK(s.function_noise() == f1);
  CHECK(s.hessian_noise(4) == b1);
  // Different seed: different values.
  NoiseStream s2(make_spec(NoiseFamily::uniform, 1.0, 1.0, 1.0, 18));
  s2.seek(5);
  CHECK(s2.function_noise() != f1);
}

TEST_CASE("family none or zero bound produces exact zeros") {
  NoiseStream off(make_spec(NoiseFamily::none, 1.0, 1.0, 1.0));
  CHECK(off.function_noise() == 0.0);
  CHECK(off.gradient_noise(3) == Vector(3, 0.0));
  CHECK(off.hessian_noise(3) == Matrix(3, 3, 0.0));

  NoiseStream zero(make_spec(NoiseFamily::uniform, 0.0, 0.0, 0.0));
  CHECK(zero.function_noise() == 0.0);
  CHECK(zero.gradient_noise(3) == Vector(3, 0.0));
  CHECK(zero.hessian_noise(3) == Matrix(3, 3, 0.0));
}

TEST_CASE("function noise respects the bound for both families") {
  const double ef = 0.37;
  NoiseStream u(make_spec(NoiseFamily::uniform, ef, 0, 0));
  NoiseStream r(make_spec(NoiseFamily::rademacher, ef, 0, 0));
  bool saw_distinct = false;
  double prev = 0.0;
  int sign_changes = 0;
  for (int k = 0; k < 10000; ++k) {
    u.seek(static_cast<std::uint64_t>(k));
    r.seek(static_cast<std::uint64_t>(k));
    const double du = u.function_noise();
    const double dr = r.function_noise();
    REQUIRE(std::abs(du) <= ef);
    REQUIRE(std::abs(dr) == ef);  // two-point family: always on the boundary
    if (k > 0 && du != prev) saw_distinct = true;
    if (k > 0 && ((dr > 0) != (prev > 0))) ++sign_changes;
    prev = du;
  }
  CHECK(saw_distinct);
  CHECK(sign_changes >= 0);
}

TEST_CASE("gradient noise stays in the ball / on the sphere") {
  const double eg = 2.5;
  for (std::size_t n : {1u, 2u, 7u}) {
    NoiseStream u(make_spec(NoiseFamily::uniform, 0, eg, 0));
    NoiseStream r(make_spec(NoiseFamily::rademacher, 0, eg, 0));
    for (int k = 0; k < 10000; ++k) {
      u.seek(static_cast<std::uint64_t>(k));
      r.seek(static_cast<std::uint64_t>(k));
      REQUIRE(ntrust::linalg::norm2(u.gradient_noise(n)) <= eg);
      const double rn = ntrust::linalg::norm2(r.gradient_noise(n));
      REQUIRE(rn <= eg);
      REQUIRE(rn >= eg * (1.0 - 1e-12));  // sphere up to rounding and the safety clamp
    }
  }
}

TEST_CASE("ball noise mean radius matches n/(n+1) * eps_g for n = 2") {
  const double eg = 1.0;
  NoiseStream u(make_spec(NoiseFamily::uniform, 0, eg, 0, 3));
  double sum = 0.0;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    u.seek(static_cast<std::uint64_t>(k));
    sum += ntrust::linalg::norm2(u.gradient_noise(2));
  }
  const double mean = sum / draws;
  const double expected = eg * 2.0 / 3.0;
  CHECK(std::abs(mean - expected) <= 0.01 * expected);
}

TEST_CASE("ball noise in one dimension covers both signs within the bound") {
  const double eg = 0.5;
  NoiseStream u(make_spec(NoiseFamily::uniform, 0, eg, 0, 5));
  int pos = 0, neg = 0;
  double sum_abs = 0.0;
  const int draws = 20000;
  for (int k = 0; k < draws; ++k) {
    u.seek(static_cast<std::uint64_t>(k));
    const double v = u.gradient_noise(1)[0];
    REQUIRE(std::abs(v) <= eg);
    (v > 0 ? pos : neg)++;
    sum_abs += std::abs(v);
  }
  CHECK(pos > draws / 4);
  CHECK(neg > draws / 4);
  // |v| is uniform on [0, eps]: mean eps/2 (5% tolerance at 2e4 draws).
  CHECK(std::abs(sum_abs / draws - eg / 2.0) <= 0.05 * (eg / 2.0));
}

TEST_CASE("hessian noise is symmetric and bounded in spectral norm (Eigen oracle)") {
  const double eb = 3.0;
  for (NoiseFamily fam : {NoiseFamily::uniform, NoiseFamily::rademacher}) {
    NoiseStream s(make_spec(fam, 0, 0, eb, 11));
    for (int k = 0; k < 1000; ++k) {
      s.seek(static_cast<std::uint64_t>(k));
      const Matrix b = s.hessian_noise(6);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < i; ++j) REQUIRE(b(i, j) == b(j, i));  // bitwise
      REQUIRE(eigen_sym_norm(b) <= eb);
    }
  }
}

TEST_CASE("frobenius normalization also respects the spectral bound") {
  const double eb = 2.0;
  NoiseSpec spec = make_spec(NoiseFamily::uniform, 0, 0, eb, 13);
  spec.normalization = ntrust::HessianNormalization::frobenius;
  NoiseStream s(spec);
  for (int k = 0; k < 300; ++k) {
    s.seek(static_cast<std::uint64_t>(k));
    REQUIRE(eigen_sym_norm(s.hessian_noise(5)) <= eb);
  }
}

TEST_CASE("hessian noise actually reaches a nontrivial fraction of the bound") {
  const double eb = 1.0;
  NoiseStream s(make_spec(NoiseFamily::uniform, 0, 0, eb, 19));
  double best = 0.0;
  for (int k = 0; k < 200; ++k) {
    s.seek(static_cast<std::uint64_t>(k));
    best = std::max(best, eigen_sym_norm(s.hessian_noise(5)));
  }
  CHECK(best >= 0.2 * eb);  // the normalization is not vacuously tiny
}

TEST_CASE("spec validation rejects bad bounds and parses names") {
  NoiseSpec bad = make_spec(NoiseFamily::uniform, -1.0, 0, 0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = make_spec(NoiseFamily::uniform, 0, std::nan(""), 0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK(ntrust::parse_noise_family("uniform") == NoiseFamily::uniform);
  CHECK(ntrust::parse_noise_family("rademacher") == NoiseFamily::rademacher);
  CHECK(ntrust::parse_noise_family("none") == NoiseFamily::none);
  CHECK_THROWS_AS(ntrust::parse_noise_family("gauss"), std::invalid_argument);
  CHECK(ntrust::to_string(NoiseFamily::uniform) == "uniform");

  CHECK(ntrust::parse_hessian_normalization("spectral") ==
        ntrust::HessianNormalization::spectral);
  CHECK(ntrust::parse_hessian_normalization("frobenius") ==
        ntrust::HessianNormalization::frobenius);
  CHECK_THROWS_AS(ntrust::parse_hessian_normalization("nuclear"), std::invalid_argument);

  CHECK(make_spec(NoiseFamily::none, 1, 1, 1).noiseless());
  CHECK(make_spec(NoiseFamily::uniform, 0, 0, 0).noiseless());
  CHECK_FALSE(make_spec(NoiseFamily::uniform, 1, 0, 0).noiseless());
}
