#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ntrust/config.hpp"
#include "ntrust/driver.hpp"

namespace ntrust {

/// Start point for one run: the problem's conventional start, a per-seed
/// uniform sample from [box_low, box_high]^n, or the explicit point from the
/// configuration (dimension-checked).
Vector resolve_start(const ExperimentConfig& cfg, const Objective& problem,
                     std::uint64_t seed);

struct RunResult {
  RatioVariant variant = RatioVariant::noisy;
  std::uint64_t seed = 0;
  Trace trace;
  std::filesystem::path trace_file;
};

struct ExperimentResult {
  std::vector<RunResult> runs;  // ordered by (variant, seed) as configured
  std::filesystem::path summary_file;
};

/// Runs every configured (variant, seed) combination, writing one trace CSV
/// per run, a summary CSV over all runs, and optional diagnostic plots, all
/// under cfg.out_dir. Independent runs execute in parallel when OpenMP is
/// available (and no observer is attached); output files are byte-identical
/// across reruns either way.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const IterationObserver& observer = {});

struct RTableCell {
  double eps_f = 0.0;
  double eps_g = 0.0;
  bool valid = false;      // every seed finished and produced a usable minimum
  double r_value = 0.0;    // log10(c_bound / sum of per-seed minima); NaN if invalid
  double c_bound = 0.0;    // critical gradient-norm level for this cell
  double sum_min_gnorm_noisy = 0.0;
  std::vector<double> min_gnorm_noisy;  // per seed
  std::vector<double> min_gnorm_true;   // per seed
};

struct RTableResult {
  std::vector<double> eps_values;  // grid shared by both noise axes
  std::vector<RTableCell> cells;   // row-major: [eps_f index][eps_g index]
  double m_estimate = 0.0;
  std::filesystem::path table_file;

  const RTableCell& cell(std::size_t fi, std::size_t gi) const {
    return cells.at(fi * eps_values.size() + gi);
  }
  /// Max minus min of r_value over valid cells; NaN when no cell is valid.
  double spread() const;
};

/// Sweeps the noise-tolerant method over an |eps| x |eps| grid of
/// (function, gradient) noise levels, 10 seeds per cell, and reports the
/// log-accuracy diagnostic per cell. Writes rtable.csv, rtable_cells.csv and
/// rtable_summary.csv under cfg.out_dir. The configured problem must have a
/// known minimizer (it anchors the curvature estimate).
RTableResult run_r_table(const ExperimentConfig& cfg);

}  // namespace ntrust
