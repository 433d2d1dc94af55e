#include "ntrust/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "ntrust/plot.hpp"
#include "ntrust/theory.hpp"
#include "ntrust/trace_io.hpp"

namespace ntrust {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<RatioVariant> selected_variants(VariantSelection sel) {
  switch (sel) {
    case VariantSelection::kClassical: return {RatioVariant::classical};
    case VariantSelection::kNoisy: return {RatioVariant::noisy};
    case VariantSelection::kBoth: return {RatioVariant::classical, RatioVariant::noisy};
  }
  return {};
}

struct RunStats {
  double final_f_true = kNaN;
  double final_gnorm_true = kNaN;
  double final_dist = kNaN;
  double min_gnorm_true = kNaN;
  double min_gnorm_noisy = kNaN;
  int accepted_steps = 0;
};

/// Minima cover every recorded iterate plus the post-run iterate.
RunStats run_stats(const Objective& obj, const Trace& trace) {
  RunStats st;
  st.final_f_true = obj.value(trace.final_iterate);
  Vector g = obj.gradient(trace.final_iterate);
  st.final_gnorm_true = linalg::norm2(g);
  if (auto xstar = obj.known_minimizer()) {
    Vector d = trace.final_iterate;
    linalg::axpy(-1.0, *xstar, d);
    st.final_dist = linalg::norm2(d);
  }
  st.min_gnorm_true = st.final_gnorm_true;
  st.min_gnorm_noisy = std::numeric_limits<double>::infinity();
  bool saw_noisy = false;
  for (const IterationRecord& rec : trace.records) {
    st.min_gnorm_true = std::min(st.min_gnorm_true, rec.gnorm_true);
    st.min_gnorm_noisy = std::min(st.min_gnorm_noisy, rec.gnorm_noisy);
    saw_noisy = true;
    if (rec.accepted) ++st.accepted_steps;
  }
  if (!saw_noisy) st.min_gnorm_noisy = kNaN;
  return st;
}

}  // namespace

Vector resolve_start(const ExperimentConfig& cfg, const Objective& problem,
                     std::uint64_t seed) {
  switch (cfg.start) {
    case StartPolicy::kProblemDefault: {
      auto d = problem.default_start();
      if (!d) {
        throw ConfigError("problem '" + problem.name() +
                          "' has no conventional start point; use start = box or explicit");
      }
      return *d;
    }
    case StartPolicy::kBox: {
      Vector x(problem.dimension());
      for (std::size_t i = 0; i < x.size(); ++i) {
        double u = rng::uniform01(rng::keyed_hash(seed, 0, rng::kStartPoint, i));
        x[i] = cfg.box_low + u * (cfg.box_high - cfg.box_low);
      }
      return x;
    }
    case StartPolicy::kExplicit: {
      if (cfg.explicit_start.size() != problem.dimension()) {
        throw ConfigError("problem.start_values: expected " +
                          std::to_string(problem.dimension()) + " values, got " +
                          std::to_string(cfg.explicit_start.size()));
      }
      return cfg.explicit_start;
    }
  }
  throw ConfigError("unhandled start policy");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const IterationObserver& observer) {
  cfg.validate();
  std::shared_ptr<const Objective> problem = parse_problem(cfg.problem_id);
  std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);

  struct Spec {
    RatioVariant variant;
    std::uint64_t seed;
  };
  std::vector<Spec> specs;
  for (RatioVariant v : selected_variants(cfg.variants)) {
    for (std::uint64_t s : cfg.seeds) specs.push_back({v, s});
  }

  ExperimentResult result;
  result.runs.resize(specs.size());
  std::vector<std::string> errors(specs.size());

  const bool use_parallel = linalg::parallel_enabled() && !observer;
  const long long total = static_cast<long long>(specs.size());
#pragma omp parallel for schedule(dynamic, 1) if (use_parallel)
  for (long long i = 0; i < total; ++i) {
    try {
      const Spec& sp = specs[static_cast<std::size_t>(i)];
      NoiseSpec noise = cfg.noise;
      noise.seed = sp.seed;
      TrustRegionConfig tr = cfg.tr;
      tr.ratio_variant = sp.variant;
      Vector x0 = resolve_start(cfg, *problem, sp.seed);

      RunResult& rr = result.runs[static_cast<std::size_t>(i)];
      rr.variant = sp.variant;
      rr.seed = sp.seed;
      rr.trace = run(*problem, noise, tr, x0, observer);

      std::string tag = to_string(sp.variant) + "_seed" + std::to_string(sp.seed);
      rr.trace_file = out_dir / ("trace_" + tag + ".csv");
      write_trace_csv(rr.trace, rr.trace_file);
      if (cfg.plots) {
        std::vector<PlotPanel> panels = diagnostic_panels(rr.trace);
        write_panels_svg(panels, out_dir / ("plot_" + tag + ".svg"));
        write_panels_csv(panels, out_dir / ("plotdata_" + tag + ".csv"));
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const std::string& err : errors) {
    if (!err.empty()) throw std::runtime_error(err);
  }

  result.summary_file = out_dir / "summary.csv";
  std::ofstream out(result.summary_file);
  if (!out) {
    throw std::runtime_error("cannot open summary file for writing: " +
                             result.summary_file.string());
  }
  out << "variant,seed,iterations,accepted_steps,aborted,final_f_true,final_gnorm_true,"
         "final_dist,min_gnorm_true,min_gnorm_noisy\n";
  for (const RunResult& rr : result.runs) {
    RunStats st = run_stats(*problem, rr.trace);
    out << to_string(rr.variant) << ',' << rr.seed << ',' << rr.trace.records.size() << ','
        << st.accepted_steps << ',' << (rr.trace.aborted ? 1 : 0) << ','
        << format_double(st.final_f_true) << ',' << format_double(st.final_gnorm_true) << ','
        << format_double(st.final_dist) << ',' << format_double(st.min_gnorm_true) << ','
        << format_double(st.min_gnorm_noisy) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failure on summary file: " +
                             result.summary_file.string());
  }
  return result;
}

double RTableResult::spread() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const RTableCell& c : cells) {
    if (!c.valid) continue;
    lo = std::min(lo, c.r_value);
    hi = std::max(hi, c.r_value);
    any = true;
  }
  return any ? hi - lo : kNaN;
}

RTableResult run_r_table(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.seeds.size() != 10) {
    throw ConfigError("run.seeds: the sensitivity table is defined over exactly 10 seeds, got " +
                      std::to_string(cfg.seeds.size()));
  }
  std::shared_ptr<const Objective> problem = parse_problem(cfg.problem_id);
  if (!problem->known_minimizer()) {
    throw ConfigError("problem.id: the sensitivity table needs a problem with a known minimizer");
  }
  std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);

  RTableResult result;
  result.eps_values = cfg.rtable_eps;
  result.m_estimate = estimate_m(*problem);

  const std::size_t n = result.eps_values.size();
  const std::size_t n_seeds = cfg.seeds.size();
  result.cells.resize(n * n);
  for (std::size_t fi = 0; fi < n; ++fi) {
    for (std::size_t gi = 0; gi < n; ++gi) {
      RTableCell& cell = result.cells[fi * n + gi];
      cell.eps_f = result.eps_values[fi];
      cell.eps_g = result.eps_values[gi];
      cell.min_gnorm_noisy.assign(n_seeds, kNaN);
      cell.min_gnorm_true.assign(n_seeds, kNaN);
    }
  }

  struct Spec {
    std::size_t cell;
    std::size_t seed_idx;
  };
  std::vector<Spec> specs;
  specs.reserve(n * n * n_seeds);
  for (std::size_t c = 0; c < n * n; ++c) {
    for (std::size_t si = 0; si < n_seeds; ++si) specs.push_back({c, si});
  }
  std::vector<char> run_ok(specs.size(), 0);
  std::vector<std::string> errors(specs.size());

  const long long total = static_cast<long long>(specs.size());
#pragma omp parallel for schedule(dynamic, 1) if (linalg::parallel_enabled())
  for (long long i = 0; i < total; ++i) {
    try {
      const Spec& sp = specs[static_cast<std::size_t>(i)];
      RTableCell& cell = result.cells[sp.cell];
      std::uint64_t seed = cfg.seeds[sp.seed_idx];

      NoiseSpec noise = cfg.noise;
      noise.eps_f = cell.eps_f;
      noise.eps_g = cell.eps_g;
      noise.seed = seed;
      TrustRegionConfig tr = cfg.tr;
      tr.ratio_variant = RatioVariant::noisy;
      tr.eps_f_for_ratio = cell.eps_f;
      Vector x0 = resolve_start(cfg, *problem, seed);

      Trace trace = run(*problem, noise, tr, x0);
      if (!trace.aborted && !trace.records.empty()) {
        double mn = std::numeric_limits<double>::infinity();
        double mt = std::numeric_limits<double>::infinity();
        for (const IterationRecord& rec : trace.records) {
          mn = std::min(mn, rec.gnorm_noisy);
          mt = std::min(mt, rec.gnorm_true);
        }
        cell.min_gnorm_noisy[sp.seed_idx] = mn;
        cell.min_gnorm_true[sp.seed_idx] = mt;
        run_ok[static_cast<std::size_t>(i)] = 1;
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const std::string& err : errors) {
    if (!err.empty()) throw std::runtime_error(err);
  }

  for (RTableCell& cell : result.cells) {
    TheoryConstants tc = compute_constants(cell.eps_f, cell.eps_g, cfg.tr.c0, cfg.tr.c2,
                                           cfg.tr.nu, result.m_estimate);
    cell.c_bound = tc.c1_radius;
    bool usable = true;
    double sum = 0.0;
    for (double v : cell.min_gnorm_noisy) {
      if (!(std::isfinite(v) && v > 0.0)) {
        usable = false;
        break;
      }
      sum += v;
    }
    if (usable) {
      cell.sum_min_gnorm_noisy = sum;
      cell.r_value = r_diagnostic(cell.c_bound, cell.min_gnorm_noisy);
      cell.valid = true;
    } else {
      cell.sum_min_gnorm_noisy = kNaN;
      cell.r_value = kNaN;
      cell.valid = false;
    }
  }

  result.table_file = out_dir / "rtable.csv";
  {
    std::ofstream out(result.table_file);
    if (!out) {
      throw std::runtime_error("cannot open table file for writing: " +
                               result.table_file.string());
    }
    out << "eps_f,eps_g,valid,r_value,c_bound,sum_min_gnorm_noisy\n";
    for (const RTableCell& cell : result.cells) {
      out << format_double(cell.eps_f) << ',' << format_double(cell.eps_g) << ','
          << (cell.valid ? 1 : 0) << ',' << format_double(cell.r_value) << ','
          << format_double(cell.c_bound) << ',' << format_double(cell.sum_min_gnorm_noisy)
          << '\n';
    }
    if (!out) {
      throw std::runtime_error("write failure on table file: " + result.table_file.string());
    }
  }
  {
    std::ofstream out(out_dir / "rtable_cells.csv");
    if (!out) throw std::runtime_error("cannot open rtable_cells.csv for writing");
    out << "eps_f,eps_g,seed,min_gnorm_noisy,min_gnorm_true\n";
    for (const RTableCell& cell : result.cells) {
      for (std::size_t si = 0; si < n_seeds; ++si) {
        out << format_double(cell.eps_f) << ',' << format_double(cell.eps_g) << ','
            << cfg.seeds[si] << ',' << format_double(cell.min_gnorm_noisy[si]) << ','
            << format_double(cell.min_gnorm_true[si]) << '\n';
      }
    }
    if (!out) throw std::runtime_error("write failure on rtable_cells.csv");
  }
  {
    std::ofstream out(out_dir / "rtable_summary.csv");
    if (!out) throw std::runtime_error("cannot open rtable_summary.csv for writing");
    double lo = kNaN, hi = kNaN;
    std::size_t valid_cells = 0;
    for (const RTableCell& c : result.cells) {
      if (!c.valid) continue;
      ++valid_cells;
      lo = std::isnan(lo) ? c.r_value : std::min(lo, c.r_value);
      hi = std::isnan(hi) ? c.r_value : std::max(hi, c.r_value);
    }
    out << "m_estimate,valid_cells,total_cells,r_min,r_max,spread\n";
    out << format_double(result.m_estimate) << ',' << valid_cells << ','
        << result.cells.size() << ',' << format_double(lo) << ',' << format_double(hi) << ','
        << format_double(result.spread()) << '\n';
    if (!out) throw std::runtime_error("write failure on rtable_summary.csv");
  }
  return result;
}

}  // namespace ntrust
