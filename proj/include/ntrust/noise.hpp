#pragma once

#include <cstdint>
#include <string>

#include "ntrust/linalg.hpp"

namespace ntrust {

enum class NoiseFamily { none, uniform, rademacher };

NoiseFamily parse_noise_family(const std::string& name);
std::string to_string(NoiseFamily family);

enum class HessianNormalization { spectral, frobenius };

HessianNormalization parse_hessian_normalization(const std::string& name);
std::string to_string(HessianNormalization n);

/// Bounds and family of the injected noise. family == none forces all draws
/// to zero regardless of the bounds.
struct NoiseSpec {
  double eps_f = 0.0;
  double eps_g = 0.0;
  double eps_b = 0.0;
  NoiseFamily family = NoiseFamily::none;
  std::uint64_t seed = 0;
  HessianNormalization normalization = HessianNormalization::spectral;

  void validate() const;
  bool noiseless() const;
};

namespace rng {

/// Stateless keyed hash; every random quantity in the project derives from
/// it so that draws are pure functions of (seed, counter, kind, lane).
std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t counter, std::uint32_t kind,
                         std::uint64_t lane);
/// Maps a hash to [0, 1).
double uniform01(std::uint64_t h);
/// Maps a hash to (0, 1] (safe for log()).
double uniform01_open_low(std::uint64_t h);

// Draw kinds. The driver uses counter 0 for the initial function evaluation
// and counter k+1 for iteration k; the harness samples start points at
// counter 0 under its own kind, so no query ever collides.
inline constexpr std::uint32_t kFunctionValue = 1;
inline constexpr std::uint32_t kGradient = 2;
inline constexpr std::uint32_t kHessian = 3;
inline constexpr std::uint32_t kStartPoint = 4;

}  // namespace rng

/// Counter-based noise generator. Draws do not mutate the stream; the
/// caller advances the counter (the driver does so once per iteration), so
/// re-querying at the same counter returns identical values and classical /
/// noise-tolerant runs with equal seeds see identical noise.
class NoiseStream {
 public:
  explicit NoiseStream(const NoiseSpec& spec);

  const NoiseSpec& spec() const { return spec_; }
  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t c) { counter_ = c; }
  void advance() { ++counter_; }

  /// Scalar function-value perturbation, |delta| <= eps_f.
  double function_noise() const;
  /// Gradient perturbation: uniform family draws from the solid ball of
  /// radius eps_g, rademacher family from the sphere of radius eps_g.
  Vector gradient_noise(std::size_t n) const;
  /// Symmetric Hessian perturbation A^T diag(lam) A / ||A||^2 with
  /// A_ij ~ U(0,1) and lam_i in [-eps_b, eps_b]; spectral norm <= eps_b.
  Matrix hessian_noise(std::size_t n) const;

 private:
  NoiseSpec spec_;
  std::uint64_t counter_ = 0;
};

}  // namespace ntrust
