#include "ntrust/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ntrust {

NoiseFamily parse_noise_family(const std::string& name) {
  if (name == "none") return NoiseFamily::none;
  if (name == "uniform") return NoiseFamily::uniform;
  if (name == "rademacher") return NoiseFamily::rademacher;
  throw std::invalid_argument("unknown noise family: " + name);
}

std::string to_string(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::none: return "none";
    case NoiseFamily::uniform: return "uniform";
    case NoiseFamily::rademacher: return "rademacher";
  }
  return "?";
}

HessianNormalization parse_hessian_normalization(const std::string& name) {
  if (name == "spectral") return HessianNormalization::spectral;
  if (name == "frobenius") return HessianNormalization::frobenius;
  throw std::invalid_argument("unknown hessian normalization: " + name);
}

std::string to_string(HessianNormalization n) {
  return n == HessianNormalization::spectral ? "spectral" : "frobenius";
}

void NoiseSpec::validate() const {
  if (!(eps_f >= 0.0) || !(eps_g >= 0.0) || !(eps_b >= 0.0))
    throw std::invalid_argument("noise bounds must be nonnegative finite");
  if (!std::isfinite(eps_f) || !std::isfinite(eps_g) || !std::isfinite(eps_b))
    throw std::invalid_argument("noise bounds must be nonnegative finite");
}

bool NoiseSpec::noiseless() const {
  return family == NoiseFamily::none || (eps_f == 0.0 && eps_g == 0.0 && eps_b == 0.0);
}

namespace rng {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t counter, std::uint32_t kind,
                         std::uint64_t lane) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = mix64(h ^ counter);
  h = mix64(h ^ ((static_cast<std::uint64_t>(kind) << 56) | (lane & 0x00ffffffffffffffULL)));
  return h;
}

double uniform01(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

double uniform01_open_low(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace rng

NoiseStream::NoiseStream(const NoiseSpec& spec) : spec_(spec) { spec_.validate(); }

namespace {

using namespace rng;

double signed_uniform(std::uint64_t h, double eps) { return eps * (2.0 * uniform01(h) - 1.0); }

double rademacher(std::uint64_t h, double eps) { return (h >> 63) ? eps : -eps; }

// Standard normal from two hashes (Box-Muller, cosine branch).
double gaussian(std::uint64_t h1, std::uint64_t h2) {
  const double u1 = uniform01_open_low(h1);
  const double u2 = uniform01(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Direction uniform on the unit sphere; falls back to e_1 in the
// measure-zero case of an all-zero gaussian draw.
Vector unit_direction(std::uint64_t seed, std::uint64_t counter, std::size_t n) {
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t h1 = keyed_hash(seed, counter, kGradient, 2 * i);
    const std::uint64_t h2 = keyed_hash(seed, counter, kGradient, 2 * i + 1);
    d[i] = gaussian(h1, h2);
  }
  const double nrm = linalg::norm2(d);
  if (nrm == 0.0) {
    d.assign(n, 0.0);
    d[0] = 1.0;
    return d;
  }
  for (double& c : d) c /= nrm;
  return d;
}

// The radius bound must hold exactly even after rounding in the
// normalization, so overshoot is clamped back to the ball/sphere. One
// rescale can itself round to a norm one ulp above the radius, so repeat
// (shrinking by at least one ulp per pass) until the bound holds.
void clamp_to_radius(Vector& v, double radius) {
  for (double nrm = linalg::norm2(v); nrm > radius && nrm > 0.0; nrm = linalg::norm2(v)) {
    double s = radius / nrm;
    if (s >= 1.0) s = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    for (double& c : v) c *= s;
  }
}

}  // namespace

double NoiseStream::function_noise() const {
  if (spec_.family == NoiseFamily::none || spec_.eps_f == 0.0) return 0.0;
  const std::uint64_t h = keyed_hash(spec_.seed, counter_, kFunctionValue, 0);
  return spec_.family == NoiseFamily::uniform ? signed_uniform(h, spec_.eps_f)
                                              : rademacher(h, spec_.eps_f);
}

Vector NoiseStream::gradient_noise(std::size_t n) const {
  if (spec_.family == NoiseFamily::none || spec_.eps_g == 0.0) return Vector(n, 0.0);
  Vector d = unit_direction(spec_.seed, counter_, n);
  double radius = spec_.eps_g;
  if (spec_.family == NoiseFamily::uniform) {
    // Uniform over the solid ball: radius = eps_g * U^(1/n).
    const double u = uniform01(keyed_hash(spec_.seed, counter_, kGradient, 2 * n));
    radius *= std::pow(u, 1.0 / static_cast<double>(n));
  }
  for (double& c : d) c *= radius;
  clamp_to_radius(d, spec_.eps_g);
  return d;
}

Matrix NoiseStream::hessian_noise(std::size_t n) const {
  if (spec_.family == NoiseFamily::none || spec_.eps_b == 0.0) return Matrix(n, n, 0.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = uniform01(keyed_hash(spec_.seed, counter_, kHessian, i * n + j));
  Vector lam(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t h = keyed_hash(spec_.seed, counter_, kHessian, n * n + i);
    lam[i] = spec_.family == NoiseFamily::uniform ? signed_uniform(h, spec_.eps_b)
                                                   : rademacher(h, spec_.eps_b);
  }
  double nrm;
  if (spec_.normalization == HessianNormalization::spectral) {
    // Power iteration converges from below; inflate so the normalized
    // matrix cannot exceed the eps_b spectral bound.
    nrm = linalg::spectral_norm(a, 1e-13, 500) * (1.0 + 1e-12);
  } else {
    nrm = linalg::frobenius_norm(a);
  }
  const double inv = 1.0 / (nrm * nrm);
  for (double& l : lam) l *= inv;
  Matrix out;
  linalg::scaled_gram(a, lam, out);
  return out;
}

}  // namespace ntrust
