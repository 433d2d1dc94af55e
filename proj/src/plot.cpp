#include "ntrust/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "ntrust/trace_io.hpp"

namespace ntrust {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

constexpr double kPanelWidth = 720.0;
constexpr double kPanelHeight = 260.0;
constexpr double kMarginLeft = 78.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 42.0;

std::string fmt(double v, const char* spec = "%g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

double clip_ratio(double r) {
  if (r < -5.0) return -5.0;
  if (r > 5.0) return 5.0;
  return r;
}

bool drawable(double v, bool log_y) {
  if (!std::isfinite(v)) return false;
  return !log_y || v > 0.0;
}

/// Chooses a tick step of the form {1,2,5} * 10^k giving roughly `target`
/// intervals over `span`.
double nice_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double factor = norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0;
  return factor * mag;
}

struct Scale {
  double lo = 0.0, hi = 1.0;  // data range (log10 space when log_y)
  double px_lo = 0.0, px_hi = 1.0;
  double to_px(double v) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

}  // namespace

std::vector<double> rolling_min(const std::vector<double>& v, int window) {
  if (window <= 0) throw std::invalid_argument("rolling_min: window must be positive");
  std::vector<double> out(v.size());
  std::deque<std::size_t> idx;  // candidate indices, values increasing
  for (std::size_t k = 0; k < v.size(); ++k) {
    while (!idx.empty() && v[idx.back()] >= v[k]) idx.pop_back();
    idx.push_back(k);
    if (idx.front() + static_cast<std::size_t>(window) <= k) idx.pop_front();
    out[k] = v[idx.front()];
  }
  return out;
}

std::vector<PlotPanel> diagnostic_panels(const Trace& trace) {
  const auto& recs = trace.records;
  std::vector<PlotPanel> panels;

  auto collect = [&recs](auto getter) {
    std::vector<PlotPoint> pts;
    pts.reserve(recs.size());
    for (const IterationRecord& r : recs) pts.push_back({r.k, getter(r)});
    return pts;
  };

  PlotPanel grad;
  grad.id = "gradient";
  grad.title = "gradient norm";
  grad.log_y = true;
  grad.series.push_back({"gnorm_true", collect([](const IterationRecord& r) {
                           return r.gnorm_true;
                         })});
  grad.series.push_back({"gnorm_noisy", collect([](const IterationRecord& r) {
                           return r.gnorm_noisy;
                         })});
  std::vector<double> gtrue;
  gtrue.reserve(recs.size());
  for (const IterationRecord& r : recs) gtrue.push_back(r.gnorm_true);
  std::vector<double> gmin = rolling_min(gtrue, 25);
  PlotSeries min_series;
  min_series.name = "gnorm_true_min25";
  for (std::size_t k = 0; k < gmin.size(); ++k) {
    min_series.points.push_back({recs[k].k, gmin[k]});
  }
  grad.series.push_back(std::move(min_series));
  if (trace.noise.eps_g > 0.0) grad.reference_lines.push_back(trace.noise.eps_g);
  panels.push_back(std::move(grad));

  PlotPanel radius;
  radius.id = "radius";
  radius.title = "trust-region radius";
  radius.log_y = true;
  radius.series.push_back({"delta", collect([](const IterationRecord& r) {
                             return r.delta;
                           })});
  panels.push_back(std::move(radius));

  bool have_dist = false;
  for (const IterationRecord& r : recs) {
    if (std::isfinite(r.dist)) {
      have_dist = true;
      break;
    }
  }
  if (have_dist) {
    PlotPanel dist;
    dist.id = "distance";
    dist.title = "distance to minimizer";
    dist.log_y = true;
    dist.series.push_back({"dist", collect([](const IterationRecord& r) {
                             return r.dist;
                           })});
    panels.push_back(std::move(dist));
  }

  PlotPanel ratio;
  ratio.id = "ratio";
  ratio.title = "acceptance ratio (clipped to [-5, 5])";
  ratio.log_y = false;
  ratio.series.push_back({"rho_clipped", collect([](const IterationRecord& r) {
                            return clip_ratio(r.rho);
                          })});
  panels.push_back(std::move(ratio));

  return panels;
}

namespace {

void render_panel(std::ofstream& out, const PlotPanel& panel, double y_offset) {
  double plot_x0 = kMarginLeft;
  double plot_x1 = kPanelWidth - kMarginRight;
  double plot_y0 = y_offset + kMarginTop;
  double plot_y1 = y_offset + kPanelHeight - kMarginBottom;

  // Data extents.
  int it_lo = 0, it_hi = 1;
  bool have_x = false;
  double v_lo = 0.0, v_hi = 0.0;
  bool have_v = false;
  auto feed_value = [&](double raw) {
    if (!drawable(raw, panel.log_y)) return;
    double v = panel.log_y ? std::log10(raw) : raw;
    if (!have_v) {
      v_lo = v_hi = v;
      have_v = true;
    } else {
      v_lo = std::min(v_lo, v);
      v_hi = std::max(v_hi, v);
    }
  };
  for (const PlotSeries& s : panel.series) {
    for (const PlotPoint& p : s.points) {
      if (!have_x) {
        it_lo = it_hi = p.iter;
        have_x = true;
      } else {
        it_lo = std::min(it_lo, p.iter);
        it_hi = std::max(it_hi, p.iter);
      }
      feed_value(p.value);
    }
  }
  for (double ref : panel.reference_lines) feed_value(ref);
  if (!have_x) it_hi = it_lo + 1;
  if (it_hi == it_lo) ++it_hi;
  if (!have_v) {
    v_lo = panel.log_y ? -1.0 : 0.0;
    v_hi = panel.log_y ? 1.0 : 1.0;
  }
  if (panel.log_y) {
    v_lo = std::floor(v_lo);
    v_hi = std::ceil(v_hi);
    if (v_hi == v_lo) v_hi += 1.0;
  } else {
    double pad = (v_hi - v_lo) * 0.05;
    if (pad == 0.0) pad = std::max(1.0, std::abs(v_hi) * 0.05);
    v_lo -= pad;
    v_hi += pad;
  }

  Scale xs{static_cast<double>(it_lo), static_cast<double>(it_hi), plot_x0, plot_x1};
  Scale ys{v_lo, v_hi, plot_y1, plot_y0};  // flipped: larger value -> smaller y pixel

  out << "<g font-family=\"Helvetica,Arial,sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"" << fmt(plot_x0) << "\" y=\"" << fmt(y_offset + 18.0)
      << "\" font-size=\"13\" font-weight=\"bold\">" << panel.title << "</text>\n";

  // Frame.
  out << "<rect x=\"" << fmt(plot_x0) << "\" y=\"" << fmt(plot_y0) << "\" width=\""
      << fmt(plot_x1 - plot_x0) << "\" height=\"" << fmt(plot_y1 - plot_y0)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // X ticks.
  double xstep = nice_step(static_cast<double>(it_hi - it_lo), 6);
  for (double t = std::ceil(it_lo / xstep) * xstep; t <= it_hi + 1e-9; t += xstep) {
    double px = xs.to_px(t);
    out << "<line x1=\"" << fmt(px, "%.2f") << "\" y1=\"" << fmt(plot_y0, "%.2f")
        << "\" x2=\"" << fmt(px, "%.2f") << "\" y2=\"" << fmt(plot_y1, "%.2f")
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(px, "%.2f") << "\" y=\"" << fmt(plot_y1 + 16.0, "%.2f")
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  out << "<text x=\"" << fmt((plot_x0 + plot_x1) / 2.0, "%.2f") << "\" y=\""
      << fmt(plot_y1 + 32.0, "%.2f") << "\" text-anchor=\"middle\">iteration</text>\n";

  // Y ticks.
  if (panel.log_y) {
    int dec_lo = static_cast<int>(v_lo);
    int dec_hi = static_cast<int>(v_hi);
    int step = std::max(1, (dec_hi - dec_lo + 5) / 6);
    for (int d = dec_lo; d <= dec_hi; d += step) {
      double py = ys.to_px(static_cast<double>(d));
      out << "<line x1=\"" << fmt(plot_x0, "%.2f") << "\" y1=\"" << fmt(py, "%.2f")
          << "\" x2=\"" << fmt(plot_x1, "%.2f") << "\" y2=\"" << fmt(py, "%.2f")
          << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << fmt(plot_x0 - 6.0, "%.2f") << "\" y=\"" << fmt(py + 4.0, "%.2f")
          << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
  } else {
    double ystep = nice_step(v_hi - v_lo, 5);
    for (double t = std::ceil(v_lo / ystep) * ystep; t <= v_hi + 1e-9; t += ystep) {
      double py = ys.to_px(t);
      out << "<line x1=\"" << fmt(plot_x0, "%.2f") << "\" y1=\"" << fmt(py, "%.2f")
          << "\" x2=\"" << fmt(plot_x1, "%.2f") << "\" y2=\"" << fmt(py, "%.2f")
          << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << fmt(plot_x0 - 6.0, "%.2f") << "\" y=\"" << fmt(py + 4.0, "%.2f")
          << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
  }

  // Reference lines.
  for (double ref : panel.reference_lines) {
    if (!drawable(ref, panel.log_y)) continue;
    double v = panel.log_y ? std::log10(ref) : ref;
    if (v < v_lo || v > v_hi) continue;
    double py = ys.to_px(v);
    out << "<line x1=\"" << fmt(plot_x0, "%.2f") << "\" y1=\"" << fmt(py, "%.2f")
        << "\" x2=\"" << fmt(plot_x1, "%.2f") << "\" y2=\"" << fmt(py, "%.2f")
        << "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
  }

  // Series.
  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const PlotSeries& s = panel.series[si];
    const char* color = kPalette[si % kPaletteSize];
    std::string pts;
    bool open = false;
    auto flush = [&]() {
      if (open && !pts.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.4\" points=\"" << pts << "\"/>\n";
      }
      pts.clear();
      open = false;
    };
    for (const PlotPoint& p : s.points) {
      if (!drawable(p.value, panel.log_y)) {
        flush();  // break the line across unplottable values
        continue;
      }
      double v = panel.log_y ? std::log10(p.value) : p.value;
      if (!pts.empty()) pts += ' ';
      pts += fmt(xs.to_px(p.iter), "%.2f");
      pts += ',';
      pts += fmt(ys.to_px(v), "%.2f");
      open = true;
    }
    flush();
    // Legend entry.
    double ly = plot_y0 + 14.0 + 14.0 * static_cast<double>(si);
    out << "<line x1=\"" << fmt(plot_x1 - 150.0, "%.2f") << "\" y1=\"" << fmt(ly - 4.0, "%.2f")
        << "\" x2=\"" << fmt(plot_x1 - 130.0, "%.2f") << "\" y2=\"" << fmt(ly - 4.0, "%.2f")
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(plot_x1 - 126.0, "%.2f") << "\" y=\"" << fmt(ly, "%.2f")
        << "\">" << s.name << "</text>\n";
  }
  out << "</g>\n";
}

}  // namespace

void write_panels_svg(const std::vector<PlotPanel>& panels,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open plot file for writing: " + path.string());
  double total_h = kPanelHeight * static_cast<double>(panels.size());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kPanelWidth)
      << "\" height=\"" << fmt(total_h) << "\" viewBox=\"0 0 " << fmt(kPanelWidth) << ' '
      << fmt(total_h) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kPanelWidth) << "\" height=\""
      << fmt(total_h) << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i], kPanelHeight * static_cast<double>(i));
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failure on plot file: " + path.string());
}

void write_panels_csv(const std::vector<PlotPanel>& panels,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open plot data file for writing: " + path.string());
  out << "panel,series,iter,value\n";
  for (const PlotPanel& panel : panels) {
    for (const PlotSeries& s : panel.series) {
      for (const PlotPoint& p : s.points) {
        out << panel.id << ',' << s.name << ',' << p.iter << ',' << format_double(p.value)
            << '\n';
      }
    }
  }
  if (!out) throw std::runtime_error("write failure on plot data file: " + path.string());
}

}  // namespace ntrust
