#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>

int main(int argc, char** argv) {
  using namespace deconv::cli;

  CLI::App app{"Deconvolution CDF estimation toolkit (recursive and batch "
               "kernel estimators under Laplace measurement error)"};
  app.require_subcommand(1);

  std::function<int()> action;

  // --- simulate
  auto* sim = app.add_subcommand("simulate", "Run Monte Carlo scenarios from a config file");
  SimulateOptions sim_opt;
  std::uint64_t sim_seed = 0;
  std::size_t sim_grid = 0;
  double sim_thr = 0.0;
  sim->add_option("--config", sim_opt.config_path, "flat key = value config file")->required();
  sim->add_option("--out", sim_opt.out_path, "output CSV path (default stdout)");
  auto* so = sim->add_option("--seed", sim_seed, "override the config seed");
  auto* go = sim->add_option("--grid-points", sim_grid, "override grid_points");
  auto* to = sim->add_option("--rmre-threshold", sim_thr, "override rmre_threshold");
  sim->callback([&] {
    if (*so) sim_opt.seed = sim_seed;
    if (*go) sim_opt.grid_points = sim_grid;
    if (*to) sim_opt.rmre_threshold = sim_thr;
    action = [&] { return run_simulate(sim_opt); };
  });

  // --- estimate
  auto* est = app.add_subcommand("estimate", "Plug-in estimation on a single-column CSV");
  EstimateOptions est_opt;
  est->add_option("--data", est_opt.data_path, "single-column CSV of observations")->required();
  est->add_option("--out", est_opt.out_path, "output CSV path (default stdout)");
  est->add_option("--nsr", est_opt.nsr, "noise-to-signal ratio for injected Laplace errors");
  est->add_option("--gamma0", est_opt.gamma0, "stepsize constant of the recursive estimator");
  est->add_option("--seed", est_opt.seed, "seed for the injected errors");
  est->add_option("--grid-points", est_opt.grid_points, "evaluation grid size");
  est->add_flag("--already-contaminated", est_opt.already_contaminated,
                "treat the column as contaminated Y (requires --sigma)");
  est->add_option("--sigma", est_opt.sigma, "known Laplace scale in direct-Y mode");
  est->callback([&] { action = [&] { return run_estimate(est_opt); }; });

  // --- kernels
  auto* ker = app.add_subcommand("kernels", "Tabulate the deconvoluting kernel family");
  KernelsOptions ker_opt;
  ker->add_option("--r", ker_opt.r, "ratio sigma^2/h^2")->required();
  ker->add_option("--min", ker_opt.min_u, "lower end of the u range");
  ker->add_option("--max", ker_opt.max_u, "upper end of the u range");
  ker->add_option("--step", ker_opt.step, "tabulation step");
  ker->add_option("--out", ker_opt.out_path, "output CSV path (default stdout)");
  ker->callback([&] { action = [&] { return run_kernels(ker_opt); }; });

  // --- verify
  auto* ver = app.add_subcommand("verify", "Run the analytic self-checks");
  ver->callback([&] { action = [&] { return run_verify(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidParam;
  }

  return action ? action() : kInvalidParam;
}
