#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntrust/config.hpp"
#include "ntrust/harness.hpp"
#include "ntrust/theory.hpp"
#include "ntrust/trace_io.hpp"

namespace {

struct Overrides {
  std::string seeds;
  std::string out;
  int iters = -1;
  double delta0 = 0.0;
  bool delta0_set = false;
  std::string variant;
  std::string solver;
  bool plots = false;
};

void add_common_options(CLI::App* sub, Overrides& ov) {
  sub->add_option("--seeds", ov.seeds,
                  "seed list: comma-separated integers and/or lo..hi ranges");
  sub->add_option("--out", ov.out, "output directory (overrides the config)");
  sub->add_option("--iters", ov.iters, "iteration count (overrides the config)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--delta0", ov.delta0, "initial trust-region radius")
      ->check(CLI::PositiveNumber)
      ->each([&ov](const std::string&) { ov.delta0_set = true; });
  sub->add_option("--variant", ov.variant, "ratio variant sweep: classical|noisy|both");
  sub->add_option("--solver", ov.solver, "subproblem solver: cauchy|dogleg|newton_cg");
  sub->add_flag("--plots", ov.plots, "also emit per-run diagnostic plots");
}

void apply_overrides(ntrust::ExperimentConfig& cfg, const Overrides& ov) {
  if (!ov.seeds.empty()) cfg.seeds = ntrust::parse_seed_list(ov.seeds, "--seeds");
  if (!ov.out.empty()) cfg.out_dir = ov.out;
  if (ov.iters > 0) cfg.tr.max_iters = ov.iters;
  if (ov.delta0_set) cfg.tr.delta0 = ov.delta0;
  if (!ov.variant.empty()) {
    cfg.variants = ntrust::parse_variant_selection(ov.variant, "--variant");
  }
  if (!ov.solver.empty()) cfg.tr.solver = ntrust::parse_solver(ov.solver);
  if (ov.plots) cfg.plots = true;
  cfg.validate();
}

void print_experiment(const ntrust::ExperimentResult& result) {
  for (const ntrust::RunResult& rr : result.runs) {
    const ntrust::Trace& t = rr.trace;
    int accepted = 0;
    for (const auto& rec : t.records) {
      if (rec.accepted) ++accepted;
    }
    std::printf("run variant=%s seed=%llu iterations=%zu accepted=%d aborted=%d file=%s\n",
                ntrust::to_string(rr.variant).c_str(),
                static_cast<unsigned long long>(rr.seed), t.records.size(), accepted,
                t.aborted ? 1 : 0, rr.trace_file.string().c_str());
  }
  std::printf("summary=%s\n", result.summary_file.string().c_str());
}

int run_table(const ntrust::ExperimentConfig& cfg) {
  ntrust::RTableResult table = ntrust::run_r_table(cfg);
  const std::size_t n = table.eps_values.size();
  std::printf("m_estimate=%s\n", ntrust::format_double(table.m_estimate).c_str());
  std::printf("%12s", "eps_f\\eps_g");
  for (double e : table.eps_values) std::printf(" %9.3g", e);
  std::printf("\n");
  for (std::size_t fi = 0; fi < n; ++fi) {
    std::printf("%12.3g", table.eps_values[fi]);
    for (std::size_t gi = 0; gi < n; ++gi) {
      const ntrust::RTableCell& cell = table.cell(fi, gi);
      if (cell.valid) {
        std::printf(" %9.2f", cell.r_value);
      } else {
        std::printf(" %9s", "-");
      }
    }
    std::printf("\n");
  }
  std::printf("spread=%s\n", ntrust::format_double(table.spread()).c_str());
  std::printf("table=%s\n", table.table_file.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-region optimization of noisy functions: library driver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string problem_id;
  double fd_step = 1e-5;
  double fd_tol = 1e-5;
  Overrides ov;

  CLI::App* cmd_run = app.add_subcommand("run", "run the experiment described by a config file");
  cmd_run->add_option("config", config_path, "INI config file")->required();
  add_common_options(cmd_run, ov);

  std::string avail;
  for (const std::string& n : ntrust::preset_names()) {
    if (!avail.empty()) avail += "|";
    avail += n;
  }
  CLI::App* cmd_preset = app.add_subcommand("preset", "run a named built-in experiment");
  cmd_preset->add_option("name", preset_name, "one of: " + avail)->required();
  add_common_options(cmd_preset, ov);

  CLI::App* cmd_rtable =
      app.add_subcommand("rtable", "noise-level sensitivity table from a config file");
  cmd_rtable->add_option("config", config_path, "INI config file")->required();
  add_common_options(cmd_rtable, ov);

  CLI::App* cmd_constants =
      app.add_subcommand("constants", "print the convergence constants for a config");
  cmd_constants->add_option("config", config_path, "INI config file")->required();

  CLI::App* cmd_check =
      app.add_subcommand("check", "finite-difference check of a problem's derivatives");
  cmd_check->add_option("problem", problem_id, "problem id, e.g. quadratic8, tridiag:200, s271")
      ->required();
  cmd_check->add_option("--step", fd_step, "finite-difference step")->check(CLI::PositiveNumber);
  cmd_check->add_option("--tol", fd_tol, "max relative error accepted")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);

    if (cmd_run->parsed() || cmd_rtable->parsed()) {
      ntrust::ExperimentConfig cfg = ntrust::load_experiment_config(config_path);
      apply_overrides(cfg, ov);
      if (cmd_rtable->parsed()) return run_table(cfg);
      print_experiment(ntrust::run_experiment(cfg));
      return 0;
    }
    if (cmd_preset->parsed()) {
      ntrust::ExperimentConfig cfg = ntrust::preset(preset_name);
      apply_overrides(cfg, ov);
      if (preset_name == "rtable") return run_table(cfg);
      print_experiment(ntrust::run_experiment(cfg));
      return 0;
    }
    if (cmd_constants->parsed()) {
      ntrust::ExperimentConfig cfg = ntrust::load_experiment_config(config_path);
      auto problem = ntrust::parse_problem(cfg.problem_id);
      double m = ntrust::estimate_m(*problem);
      ntrust::TheoryConstants tc = ntrust::compute_constants(
          cfg.noise.eps_f, cfg.noise.eps_g, cfg.tr.c0, cfg.tr.c2, cfg.tr.nu, m);
      auto line = [](const char* k, double v) {
        std::printf("%s = %s\n", k, ntrust::format_double(v).c_str());
      };
      std::printf("problem = %s\n", problem->name().c_str());
      line("m_estimate", m);
      line("eps_f", tc.eps_f);
      line("eps_g", tc.eps_g);
      line("r", tc.r);
      line("mu", tc.mu);
      line("beta", tc.beta);
      line("eta", tc.eta);
      line("gamma", tc.gamma);
      line("delta_bar", tc.delta_bar);
      line("c1_radius", tc.c1_radius);
      return 0;
    }
    if (cmd_check->parsed()) {
      auto problem = ntrust::parse_problem(problem_id);
      auto start = problem->default_start();
      ntrust::Vector x =
          start ? *start : ntrust::Vector(problem->dimension(), 1.0);
      ntrust::FiniteDifferenceReport rep =
          ntrust::finite_difference_check(*problem, x, fd_step);
      bool ok = rep.grad_rel_err <= fd_tol && rep.hess_rel_err <= fd_tol;
      std::printf("problem=%s n=%zu h=%s grad_rel_err=%s hess_rel_err=%s status=%s\n",
                  problem->name().c_str(), problem->dimension(),
                  ntrust::format_double(fd_step).c_str(),
                  ntrust::format_double(rep.grad_rel_err).c_str(),
                  ntrust::format_double(rep.hess_rel_err).c_str(), ok ? "ok" : "bad");
      return ok ? 0 : 1;
    }
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
