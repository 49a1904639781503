#include "cli/commands.hpp"

#include "cli/config.hpp"
#include "cli/csvio.hpp"
#include "deconv/estimators.hpp"
#include "deconv/kernels.hpp"
#include "deconv/plugin.hpp"
#include "deconv/simlab.hpp"
#include "deconv/stats.hpp"
#include "deconv/verify.hpp"
#include "deconv/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <vector>

namespace deconv::cli {

namespace {

void emit_header(CsvSink& sink, const std::string& command,
                 const std::map<std::string, std::string>& resolved) {
  sink.stream() << "# deconv " << kVersion << "\n";
  sink.stream() << "# command = " << command << "\n";
  for (const auto& [k, v] : resolved) sink.stream() << "# config." << k << " = " << v << "\n";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

std::string join_doubles(const std::vector<double>& items) {
  std::vector<std::string> s;
  s.reserve(items.size());
  for (double v : items) s.push_back(fmt_exact(v));
  return join(s);
}

struct DataParseError : std::runtime_error {
  std::size_t line;
  DataParseError(std::size_t l, const std::string& msg)
      : std::runtime_error(msg), line(l) {}
};

std::vector<double> read_numeric_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || !std::isfinite(v))
      throw DataParseError(lineno, "non-numeric row");
    out.push_back(v);
  }
  return out;
}

} // namespace

int run_simulate(const SimulateOptions& opt) {
  KeyValueConfig cfg;
  try {
    cfg = KeyValueConfig::parse_file(opt.config_path);
    cfg.require_known_keys({"distribution", "n", "nsr", "reps", "seed", "estimators",
                            "gamma0", "grid_points", "rmre_threshold", "functional_cap"});
  } catch (const std::exception& e) {
    std::cerr << "deconv simulate: " << e.what() << "\n";
    return kConfigParse;
  }

  try {
    std::vector<std::string> dist_names = cfg.get_list("distribution", {"normal(0,1)"});
    std::vector<double> sizes = cfg.get_double_list("n", {50});
    std::vector<double> nsrs = cfg.get_double_list("nsr", {0.1});
    std::size_t reps = static_cast<std::size_t>(cfg.get_u64("reps", 100));
    std::uint64_t seed = opt.seed.value_or(cfg.get_u64("seed", 1));
    std::vector<std::string> est_names = cfg.get_list("estimators", {"nadaraya", "recursive"});
    std::vector<double> gamma0s = cfg.get_double_list("gamma0", {1.0});
    std::size_t grid_points = opt.grid_points.value_or(
        static_cast<std::size_t>(cfg.get_u64("grid_points", 101)));
    double rmre_threshold =
        opt.rmre_threshold.value_or(cfg.get_double("rmre_threshold", 0.01));
    std::size_t functional_cap = static_cast<std::size_t>(cfg.get_u64("functional_cap", 2000));

    std::vector<EstimatorSpec> specs;
    for (const auto& name : est_names) {
      if (name == "nadaraya") {
        specs.push_back({EstimatorSpec::Kind::nadaraya, 0.0});
      } else if (name == "recursive") {
        for (double g : gamma0s) specs.push_back({EstimatorSpec::Kind::recursive, g});
      } else {
        throw std::invalid_argument("unknown estimator '" + name + "'");
      }
    }

    std::vector<TrueDistribution> dists;
    std::vector<std::string> canonical_names;
    for (const auto& d : dist_names) {
      dists.push_back(TrueDistribution::parse(d));
      canonical_names.push_back(dists.back().name());
    }

    std::map<std::string, std::string> resolved;
    resolved["distribution"] = join(canonical_names);
    std::vector<std::string> size_str;
    for (double n : sizes) size_str.push_back(std::to_string(static_cast<std::size_t>(n)));
    resolved["n"] = join(size_str);
    resolved["nsr"] = join_doubles(nsrs);
    resolved["reps"] = std::to_string(reps);
    resolved["seed"] = std::to_string(seed);
    resolved["estimators"] = join(est_names);
    resolved["gamma0"] = join_doubles(gamma0s);
    resolved["grid_points"] = std::to_string(grid_points);
    resolved["rmre_threshold"] = fmt_exact(rmre_threshold);
    resolved["functional_cap"] = std::to_string(functional_cap);

    CsvSink sink(opt.out_path);
    emit_header(sink, "simulate", resolved);
    sink.stream() << "scenario,distribution,n,nsr,estimator,gamma0,mean_rmre,mean_cor,"
                     "cpu_seconds,excluded_reps\n";

    std::size_t scenario_id = 0;
    for (std::size_t d = 0; d < dists.size(); ++d) {
      for (double nsr : nsrs) {
        for (double n_raw : sizes) {
          ++scenario_id;
          ScenarioConfig sc;
          sc.dist = dists[d];
          if (!(n_raw >= 1.0) || n_raw != std::floor(n_raw))
            throw std::invalid_argument("n must be a positive integer");
          sc.n = static_cast<std::size_t>(n_raw);
          sc.nsr = nsr;
          sc.reps = reps;
          sc.seed = seed;
          sc.estimators = specs;
          sc.grid_points = grid_points;
          sc.rmre_threshold = rmre_threshold;
          sc.functional_cap = functional_cap;
          MetricsReport report = run_scenario(sc);
          for (const auto& m : report.per_estimator) {
            sink.stream() << scenario_id << "," << canonical_names[d] << "," << sc.n << ","
                          << fmt_exact(nsr) << ",";
            // gamma0 column stays empty for the batch estimator
            if (m.spec.kind == EstimatorSpec::Kind::nadaraya)
              sink.stream() << "nadaraya,";
            else
              sink.stream() << "recursive," << fmt_exact(m.spec.gamma0);
            sink.stream() << "," << fmt_exact(m.mean_rmre) << "," << fmt_exact(m.mean_cor)
                          << "," << fmt_seconds(m.cpu_seconds) << "," << m.excluded_reps
                          << "\n";
          }
        }
      }
    }
    sink.commit();
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "deconv simulate: " << e.what() << "\n";
    return kInvalidParam;
  }
}

int run_estimate(const EstimateOptions& opt) {
  std::vector<double> column;
  try {
    column = read_numeric_column(opt.data_path);
  } catch (const DataParseError& e) {
    std::cerr << "deconv estimate: " << e.what() << " at line " << e.line << "\n";
    return kDataParse;
  } catch (const std::exception& e) {
    std::cerr << "deconv estimate: " << e.what() << "\n";
    return kDataParse;
  }

  if (column.size() < 5) {
    std::cerr << "deconv estimate: need at least 5 numeric rows, got " << column.size()
              << "\n";
    return kDegenerateData;
  }

  double sigma = 0.0;
  std::vector<double> contaminated;
  try {
    if (opt.already_contaminated) {
      if (!(opt.sigma > 0.0)) {
        std::cerr << "deconv estimate: --already-contaminated requires --sigma > 0\n";
        return kInvalidParam;
      }
      sigma = opt.sigma;
      contaminated = column;
    } else {
      if (!(opt.nsr > 0.0)) {
        std::cerr << "deconv estimate: --nsr must be positive (this subcommand "
                     "deconvolves injected noise)\n";
        return kInvalidParam;
      }
      double var_x = stats::sample_variance(column);
      if (!(var_x > 0.0)) throw std::invalid_argument("data column is constant");
      sigma = sigma_from_nsr(var_x, opt.nsr);
      RngStream rng(opt.seed, 0);
      contaminated = column;
      for (double& y : contaminated) y += rng.laplace(sigma);
    }
    if (!(opt.gamma0 > 2.0 / 7.0)) {
      std::cerr << "deconv estimate: --gamma0 must exceed 2/7\n";
      return kInvalidParam;
    }
  } catch (const std::exception& e) {
    std::cerr << "deconv estimate: " << e.what() << "\n";
    return kDegenerateData;
  }

  try {
    const std::size_t n = contaminated.size();
    std::span<const double> y(contaminated);
    std::span<const double> pilot_data = y.subspan(0, std::min<std::size_t>(n, 2000));
    AllFunctionals all = estimate_all_functionals(pilot_data, sigma);
    PipelineFunctionals rec_f = recursive_pipeline(all);
    PipelineFunctionals bat_f = batch_pipeline(all);
    if (!rec_f.valid || !bat_f.valid) {
      std::cerr << "deconv estimate: functional estimates are nonpositive on both "
                   "routes; cannot build a bandwidth plan\n";
      return kDegenerateData;
    }
    BandwidthPlan rec_plan =
        optimal_bandwidth_recursive(rec_f.i1, rec_f.i2, sigma, opt.gamma0, n);
    BandwidthPlan bat_plan = optimal_bandwidth_batch(bat_f.i1, bat_f.i2, sigma, n);

    double h_rec_n = rec_plan.bandwidth_at(n);
    double h_bat_n = bat_plan.bandwidth_at(n);
    double h_max = std::max(rec_plan.c, bat_plan.c);
    auto [mn, mx] = std::minmax_element(y.begin(), y.end());
    EvaluationGrid grid =
        EvaluationGrid::linspace(*mn - 3.0 * h_max, *mx + 3.0 * h_max, opt.grid_points);

    RecursiveCdfState state(grid, sigma, StepsizeSchedule{opt.gamma0},
                            BandwidthSchedule{rec_plan.c, rec_plan.a});
    state.update_all(y);
    std::vector<double> batch_est = nadaraya_estimate(y, h_bat_n, sigma, grid);

    std::map<std::string, std::string> resolved;
    resolved["data"] = opt.data_path;
    resolved["rows"] = std::to_string(n);
    resolved["nsr"] = fmt_exact(opt.nsr);
    resolved["sigma"] = fmt_exact(sigma);
    resolved["gamma0"] = fmt_exact(opt.gamma0);
    resolved["seed"] = std::to_string(opt.seed);
    resolved["grid_points"] = std::to_string(opt.grid_points);
    resolved["already_contaminated"] = opt.already_contaminated ? "true" : "false";
    resolved["i1_fell_back"] = rec_f.i1_fell_back ? "true" : "false";
    resolved["i2_fell_back"] = rec_f.i2_fell_back ? "true" : "false";

    CsvSink sink(opt.out_path);
    emit_header(sink, "estimate", resolved);
    sink.stream() << "x,F_recursive,F_nadaraya,h_recursive,h_nadaraya,I1_recursive,"
                     "I1_nadaraya,I2_recursive,I2_nadaraya,AMISE_recursive,AMISE_nadaraya\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sink.stream() << fmt_exact(grid.points()[i]) << "," << fmt_exact(state.values()[i])
                    << "," << fmt_exact(batch_est[i]) << "," << fmt_exact(h_rec_n) << ","
                    << fmt_exact(h_bat_n) << "," << fmt_exact(rec_f.i1) << ","
                    << fmt_exact(bat_f.i1) << "," << fmt_exact(rec_f.i2) << ","
                    << fmt_exact(bat_f.i2) << "," << fmt_exact(rec_plan.amise) << ","
                    << fmt_exact(bat_plan.amise) << "\n";
    }
    sink.commit();
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "deconv estimate: " << e.what() << "\n";
    return kDegenerateData;
  }
}

int run_kernels(const KernelsOptions& opt) {
  if (!(opt.r >= 0.0)) {
    std::cerr << "deconv kernels: --r must be nonnegative\n";
    return kInvalidParam;
  }
  if (!(opt.step > 0.0) || !(opt.max_u > opt.min_u)) {
    std::cerr << "deconv kernels: invalid range\n";
    return kInvalidParam;
  }
  auto p = DeconvKernelParams::from_ratio(opt.r);
  const auto rows =
      static_cast<std::size_t>(std::floor((opt.max_u - opt.min_u) / opt.step + 1e-9)) + 1;

  std::map<std::string, std::string> resolved;
  resolved["r"] = fmt_exact(opt.r);
  resolved["min"] = fmt_exact(opt.min_u);
  resolved["max"] = fmt_exact(opt.max_u);
  resolved["step"] = fmt_exact(opt.step);

  CsvSink sink(opt.out_path);
  emit_header(sink, "kernels", resolved);
  sink.stream() << "u,kernel,cdf_kernel,kernel_deriv\n";
  for (std::size_t i = 0; i < rows; ++i) {
    double u = opt.min_u + static_cast<double>(i) * opt.step;
    sink.stream() << fmt_exact(u) << "," << fmt_exact(deconv_kernel(u, p)) << ","
                  << fmt_exact(deconv_cdf_kernel(u, p)) << ","
                  << fmt_exact(deconv_kernel_deriv(u, p)) << "\n";
  }
  try {
    sink.commit();
  } catch (const std::exception& e) {
    std::cerr << "deconv kernels: " << e.what() << "\n";
    return kInvalidParam;
  }
  return kOk;
}

int run_verify() {
  auto results = verify::run_all();
  return verify::report(results, std::cout) == 0 ? kOk : kVerifyFail;
}

} // namespace deconv::cli
