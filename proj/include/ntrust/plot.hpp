#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ntrust/driver.hpp"

namespace ntrust {

/// Trailing minimum over a sliding window: out[k] = min(v[max(0,k-w+1)..k]).
std::vector<double> rolling_min(const std::vector<double>& v, int window);

struct PlotPoint {
  int iter = 0;
  double value = 0.0;
};

struct PlotSeries {
  std::string name;
  std::vector<PlotPoint> points;
};

struct PlotPanel {
  std::string id;       // short machine name used in the tidy CSV
  std::string title;    // human label drawn in the SVG
  bool log_y = false;
  std::vector<PlotSeries> series;
  std::vector<double> reference_lines;  // horizontal guides (e.g. a noise level)
};

/// Builds the standard diagnostic panels for one run:
///   gradient: true/noisy gradient norms plus a rolling-minimum (window 25) of
///             the true norm, with the gradient-noise level as a guide (log y)
///   radius:   trust-region radius per iteration (log y)
///   distance: distance to the known minimizer, omitted when unknown (log y)
///   ratio:    acceptance ratio clipped to [-5, 5] (linear y)
/// Clipping applies to these plot series only; trace files keep raw values.
std::vector<PlotPanel> diagnostic_panels(const Trace& trace);

/// Deterministic standalone SVG (no timestamps, no external references).
void write_panels_svg(const std::vector<PlotPanel>& panels,
                      const std::filesystem::path& path);

/// Tidy long-format CSV with columns: panel,series,iter,value.
void write_panels_csv(const std::vector<PlotPanel>& panels,
                      const std::filesystem::path& path);

}  // namespace ntrust
