#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ntrust/model.hpp"
#include "ntrust/noise.hpp"
#include "ntrust/problems.hpp"
#include "ntrust/subproblem.hpp"

namespace ntrust {

/// classical: rho = (f_old - f_new) / pred.
/// noisy:     rho = (f_old - f_new + r eps_f) / (pred + r eps_f),
/// with r = 2 / (1 - c2) and eps_f the configured function-noise bound.
enum class RatioVariant { classical, noisy };

RatioVariant parse_ratio_variant(const std::string& name);
std::string to_string(RatioVariant v);

struct TrustRegionConfig {
  double c0 = 0.1;   // acceptance threshold
  double c1 = 0.25;  // shrink threshold
  double c2 = 0.5;   // expand threshold
  double nu = 2.0;   // radius factor
  double delta0 = 1.0;
  double eps_f_for_ratio = 0.0;
  RatioVariant ratio_variant = RatioVariant::noisy;
  int max_iters = 200;
  SolverKind solver = SolverKind::newton_cg;
  double cg_tol = 1e-8;
  bool require_boundary_for_increase = false;

  /// Ratio relaxation coefficient r = 2 / (1 - c2); computed, never stored.
  double relaxation() const { return 2.0 / (1.0 - c2); }

  /// Enforces 0 < c0 <= c1 < c2 < 1, nu > 1, delta0 > 0, max_iters >= 1,
  /// eps_f_for_ratio >= 0, cg_tol > 0.
  void validate() const;
};

/// Throws on non-finite inputs; a zero denominator yields -infinity (the
/// step is rejected and the radius shrinks).
double acceptance_ratio(double f_noisy_current, double f_noisy_trial, double pred_red,
                        const TrustRegionConfig& cfg);

struct RadiusUpdate {
  double delta_next = 0.0;
  bool accept = false;
};

/// rho < c1 shrinks by nu, rho > c2 expands by nu (gated on boundary_hit
/// when require_boundary_for_increase is set), otherwise the radius is
/// kept; the step is accepted iff rho > c0.
RadiusUpdate radius_and_step_update(double rho, double delta, const SubproblemSolution& step,
                                    const TrustRegionConfig& cfg);

struct IterationRecord {
  int k = 0;
  double f_true = 0.0;
  double f_noisy = 0.0;
  double gnorm_true = 0.0;
  double gnorm_noisy = 0.0;
  double delta = 0.0;  // radius at the start of the iteration
  double rho = 0.0;
  bool accepted = false;
  double step_norm = 0.0;
  double dist = 0.0;  // distance to the known minimizer, NaN when unknown
};

struct Trace {
  std::string problem;
  NoiseSpec noise;
  TrustRegionConfig config;
  std::vector<IterationRecord> records;
  Vector final_iterate;
  double final_f_noisy = 0.0;
  bool aborted = false;
  std::string error;
};

/// Read-only view of one iteration handed to an observer (used by tests to
/// instrument runs without widening the record format).
struct IterationView {
  const Vector& x;
  const Vector& trial_x;
  const QuadraticModel& model;
  const SubproblemSolution& step;
  double trial_f_noisy;
  const IterationRecord& record;
};

using IterationObserver = std::function<void(const IterationView&)>;

/// Runs max_iters trust-region iterations from x0 (no stopping test). The
/// noisy f at the current iterate is the value produced when that iterate
/// was first evaluated: acceptance promotes the trial evaluation, rejection
/// keeps the cached value. All draws of iteration k use counter k+1, so
/// both ratio variants see identical noise under equal seeds. True values
/// are recorded for diagnostics only. A non-finite evaluation aborts with a
/// partial trace and error flag.
Trace run(const Objective& obj, const NoiseSpec& noise, const TrustRegionConfig& cfg,
          const Vector& x0, const IterationObserver& observer = {});

}  // namespace ntrust
