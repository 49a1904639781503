#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace deconv::cli {

//! Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerifyFail = 1,
  kConfigParse = 2,
  kInvalidParam = 3,
  kDataParse = 4,
  kDegenerateData = 5,
};

struct SimulateOptions {
  std::string config_path;
  std::string out_path; // empty = stdout
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_points;
  std::optional<double> rmre_threshold;
};

struct EstimateOptions {
  std::string data_path;
  std::string out_path;
  double nsr = 0.0;
  double gamma0 = 1.0;
  std::uint64_t seed = 1;
  std::size_t grid_points = 101;
  bool already_contaminated = false;
  double sigma = 0.0; // used only with already_contaminated
};

struct KernelsOptions {
  double r = 0.0;
  double min_u = -8.0;
  double max_u = 8.0;
  double step = 0.01;
  std::string out_path;
};

int run_simulate(const SimulateOptions& opt);
int run_estimate(const EstimateOptions& opt);
int run_kernels(const KernelsOptions& opt);
int run_verify();

} // namespace deconv::cli
