#include "ntrust/driver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ntrust {

RatioVariant parse_ratio_variant(const std::string& name) {
  if (name == "classical") return RatioVariant::classical;
  if (name == "noisy") return RatioVariant::noisy;
  throw std::invalid_argument("unknown ratio variant: " + name);
}

std::string to_string(RatioVariant v) {
  return v == RatioVariant::classical ? "classical" : "noisy";
}

void TrustRegionConfig::validate() const {
  if (!(c0 > 0.0 && c0 <= c1 && c1 < c2 && c2 < 1.0))
    throw std::invalid_argument("trust region: need 0 < c0 <= c1 < c2 < 1");
  if (!(nu > 1.0) || !std::isfinite(nu))
    throw std::invalid_argument("trust region: need nu > 1");
  if (!(delta0 > 0.0) || !std::isfinite(delta0))
    throw std::invalid_argument("trust region: need delta0 > 0");
  if (max_iters < 1) throw std::invalid_argument("trust region: need max_iters >= 1");
  if (!(eps_f_for_ratio >= 0.0) || !std::isfinite(eps_f_for_ratio))
    throw std::invalid_argument("trust region: need eps_f_for_ratio >= 0");
  if (!(cg_tol > 0.0)) throw std::invalid_argument("trust region: need cg_tol > 0");
}

double acceptance_ratio(double f_noisy_current, double f_noisy_trial, double pred_red,
                        const TrustRegionConfig& cfg) {
  if (!std::isfinite(f_noisy_current) || !std::isfinite(f_noisy_trial) ||
      !std::isfinite(pred_red))
    throw std::runtime_error("acceptance ratio: non-finite input");
  const double relax =
      cfg.ratio_variant == RatioVariant::noisy ? cfg.relaxation() * cfg.eps_f_for_ratio : 0.0;
  const double num = f_noisy_current - f_noisy_trial + relax;
  const double den = pred_red + relax;
  if (den == 0.0) return -std::numeric_limits<double>::infinity();
  return num / den;
}

RadiusUpdate radius_and_step_update(double rho, double delta, const SubproblemSolution& step,
                                    const TrustRegionConfig& cfg) {
  RadiusUpdate upd;
  if (rho < cfg.c1) {
    upd.delta_next = delta / cfg.nu;
  } else if (rho > cfg.c2 && (!cfg.require_boundary_for_increase || step.boundary_hit)) {
    upd.delta_next = cfg.nu * delta;
  } else {
    upd.delta_next = delta;
  }
  upd.accept = rho > cfg.c0;
  return upd;
}

Trace run(const Objective& obj, const NoiseSpec& noise, const TrustRegionConfig& cfg,
          const Vector& x0, const IterationObserver& observer) {
  cfg.validate();
  noise.validate();
  const std::size_t n = obj.dimension();
  if (x0.size() != n) throw std::invalid_argument("run: start point has wrong dimension");

  Trace trace;
  trace.problem = obj.name();
  trace.noise = noise;
  trace.config = cfg;
  trace.records.reserve(static_cast<std::size_t>(cfg.max_iters));

  const auto minimizer = obj.known_minimizer();
  const bool draw_g = noise.family != NoiseFamily::none && noise.eps_g > 0.0;
  const bool draw_b = noise.family != NoiseFamily::none && noise.eps_b > 0.0;

  NoiseStream stream(noise);
  Vector x = x0;
  double delta = cfg.delta0;

  auto abort = [&trace, &x](const std::string& why, double f_noisy) {
    trace.aborted = true;
    trace.error = why;
    trace.final_iterate = x;
    trace.final_f_noisy = f_noisy;
    return trace;
  };

  stream.seek(0);
  double f_noisy = obj.value(x) + stream.function_noise();
  if (!std::isfinite(f_noisy)) return abort("non-finite function value at the start point", f_noisy);

  Vector trial_x(n);
  for (int k = 0; k < cfg.max_iters; ++k) {
    stream.seek(static_cast<std::uint64_t>(k) + 1);

    const double f_true = obj.value(x);
    const Vector g_true = obj.gradient(x);
    QuadraticModel m;
    m.f_noisy = f_noisy;
    m.g_noisy = g_true;
    if (draw_g) linalg::axpy(1.0, stream.gradient_noise(n), m.g_noisy);
    m.b = obj.hessian(x);
    if (draw_b) {
      const Matrix db = stream.hessian_noise(n);
      double* bp = m.b.data();
      const double* dp = db.data();
      for (std::size_t i = 0; i < m.b.size(); ++i) bp[i] += dp[i];
    }
    if (!std::isfinite(f_true) || !linalg::all_finite(m.g_noisy) || !linalg::all_finite(m.b))
      return abort("non-finite model at iteration " + std::to_string(k), f_noisy);

    const SubproblemSolution sol = solve_subproblem(m, delta, cfg.solver, cfg.cg_tol);
    if (!linalg::all_finite(sol.p) || !std::isfinite(sol.predicted_reduction))
      return abort("non-finite step at iteration " + std::to_string(k), f_noisy);

    trial_x = x;
    linalg::axpy(1.0, sol.p, trial_x);
    const double trial_f_noisy = obj.value(trial_x) + stream.function_noise();
    if (!std::isfinite(trial_f_noisy))
      return abort("non-finite trial value at iteration " + std::to_string(k), f_noisy);

    const double rho = acceptance_ratio(f_noisy, trial_f_noisy, sol.predicted_reduction, cfg);
    const RadiusUpdate upd = radius_and_step_update(rho, delta, sol, cfg);

    IterationRecord rec;
    rec.k = k;
    rec.f_true = f_true;
    rec.f_noisy = f_noisy;
    rec.gnorm_true = linalg::norm2(g_true);
    rec.gnorm_noisy = linalg::norm2(m.g_noisy);
    rec.delta = delta;
    rec.rho = rho;
    rec.accepted = upd.accept;
    rec.step_norm = linalg::norm2(sol.p);
    if (minimizer) {
      Vector diff = x;
      linalg::axpy(-1.0, *minimizer, diff);
      rec.dist = linalg::norm2(diff);
    } else {
      rec.dist = std::numeric_limits<double>::quiet_NaN();
    }
    trace.records.push_back(rec);

    if (observer) observer(IterationView{x, trial_x, m, sol, trial_f_noisy, trace.records.back()});

    delta = upd.delta_next;
    if (upd.accept) {
      x = trial_x;
      f_noisy = trial_f_noisy;
    }
  }

  trace.final_iterate = x;
  trace.final_f_noisy = f_noisy;
  return trace;
}

}  // namespace ntrust
