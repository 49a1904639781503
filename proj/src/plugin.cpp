#include "deconv/plugin.hpp"

#include "deconv/batch.hpp"
#include "deconv/stats.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace deconv {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272982;

void warn_soft_cap(const char* fn, std::size_t n) {
  if (n > kFunctionalSoftCap)
    std::cerr << "deconv: " << fn << " is O(n^3) and n = " << n
              << " exceeds the soft cap " << kFunctionalSoftCap << "\n";
}

void validate_inputs(std::span<const double> data, double sigma, std::size_t min_n,
                     const char* fn) {
  if (data.size() < min_n)
    throw std::invalid_argument(std::string(fn) + ": need at least " +
                                std::to_string(min_n) + " observations");
  if (!(sigma >= 0.0)) throw std::invalid_argument(std::string(fn) + ": sigma must be nonnegative");
}

//! Weights w_k = gamma_k * prod_{i>k} (1 - gamma_i) of the recursively
//! weighted sums, built by a backward suffix product so no factor (1 -
//! gamma_1) — zero or negative for gamma0 >= 1 — is ever inverted.
std::vector<double> recursive_weights(double gamma0, std::size_t n) {
  StepsizeSchedule step{gamma0};
  std::vector<double> w(n);
  double suffix = 1.0;
  for (std::size_t k = n; k >= 1; --k) {
    w[k - 1] = step.at(k) * suffix;
    suffix *= 1.0 - step.at(k);
  }
  return w;
}

struct PilotArrays {
  std::vector<double> inv_b;
  std::vector<double> r;
};

PilotArrays pilot_arrays(const PilotBandwidthSpec& pilot, double sigma, std::size_t n) {
  PilotArrays a;
  a.inv_b.resize(n);
  a.r.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    double b = pilot.at(k);
    a.inv_b[k - 1] = 1.0 / b;
    a.r[k - 1] = (sigma / b) * (sigma / b);
  }
  return a;
}

} // namespace

FunctionalEstimate i1_recursive(std::span<const double> data, double sigma,
                                const PilotBandwidthSpec& pilot) {
  validate_inputs(data, sigma, 2, "i1_recursive");
  const std::size_t n = data.size();
  const StepsizeSchedule step{kI1StepsizeConstant};
  const PilotArrays pa = pilot_arrays(pilot, sigma, n);

  std::vector<double> row(n);
  stats::NeumaierSum total;
  for (std::size_t i = 0; i < n; ++i) {
    batch::deconv_kernel_row_seq(data.data(), n, data[i], pa.inv_b.data(),
                                 pa.r.data(), row.data());
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      double gamma = step.at(k);
      s = (1.0 - gamma) * s + gamma * pa.inv_b[k - 1] * row[k - 1];
    }
    total.add(s);
  }
  double value = total.value() / static_cast<double>(n);
  return {value, value > 0.0};
}

FunctionalEstimate i1_recursive(std::span<const double> data, double sigma) {
  return i1_recursive(data, sigma, make_pilot(data, kI1PilotBeta));
}

FunctionalEstimate i2_recursive(std::span<const double> data, double sigma,
                                const PilotBandwidthSpec& pilot) {
  validate_inputs(data, sigma, 3, "i2_recursive");
  const std::size_t n = data.size();
  warn_soft_cap("i2_recursive", n);
  const std::vector<double> w = recursive_weights(kI2StepsizeConstant, n);
  const PilotArrays pa = pilot_arrays(pilot, sigma, n);

  std::vector<double> row(n);
  stats::NeumaierSum total;
  for (std::size_t i = 0; i < n; ++i) {
    batch::deconv_deriv_row_seq(data.data(), n, data[i], pa.inv_b.data(),
                                pa.r.data(), row.data());
    for (std::size_t j = 0; j < n; ++j)
      row[j] *= w[j] * pa.inv_b[j] * pa.inv_b[j];
    total.add(batch::offdiag_product_sum(row.data(), n));
  }
  double value = total.value() / static_cast<double>(n);
  return {value, value > 0.0};
}

FunctionalEstimate i2_recursive(std::span<const double> data, double sigma) {
  return i2_recursive(data, sigma, make_pilot(data, kI2PilotBeta));
}

FunctionalEstimate i1_batch(std::span<const double> data, double sigma,
                            const PilotBandwidthSpec& pilot) {
  validate_inputs(data, sigma, 2, "i1_batch");
  const std::size_t n = data.size();
  const double b = pilot.at(n);
  const double r = (sigma / b) * (sigma / b);

  std::vector<double> row(n);
  stats::NeumaierSum total;
  for (std::size_t i = 0; i < n; ++i) {
    batch::deconv_kernel_row(data.data(), n, data[i], 1.0 / b, r, row.data());
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j];
    total.add(s - row[i]); // drop the diagonal term
  }
  double value = total.value() /
                 (static_cast<double>(n) * static_cast<double>(n - 1) * b);
  return {value, value > 0.0};
}

FunctionalEstimate i1_batch(std::span<const double> data, double sigma) {
  return i1_batch(data, sigma, make_pilot(data, kI1PilotBeta));
}

FunctionalEstimate i2_batch(std::span<const double> data, double sigma,
                            const PilotBandwidthSpec& pilot) {
  validate_inputs(data, sigma, 3, "i2_batch");
  const std::size_t n = data.size();
  warn_soft_cap("i2_batch", n);
  const double b = pilot.at(n);
  const double r = (sigma / b) * (sigma / b);

  std::vector<double> row(n);
  stats::NeumaierSum total;
  for (std::size_t i = 0; i < n; ++i) {
    batch::deconv_deriv_row(data.data(), n, data[i], 1.0 / b, r, row.data());
    total.add(batch::offdiag_product_sum(row.data(), n));
  }
  double nd = static_cast<double>(n);
  double value = total.value() / (nd * nd * nd * b * b * b * b);
  return {value, value > 0.0};
}

FunctionalEstimate i2_batch(std::span<const double> data, double sigma) {
  return i2_batch(data, sigma, make_pilot(data, kI2PilotBeta));
}

double BandwidthPlan::bandwidth_at(std::size_t k) const {
  return BandwidthSchedule{c, a}.at(k);
}

namespace {

void validate_plan_inputs(double i1, double i2, double sigma, const char* fn) {
  if (!(i2 > 0.0)) throw std::invalid_argument(std::string(fn) + ": i2 must be positive");
  if (!(i1 >= 0.0)) throw std::invalid_argument(std::string(fn) + ": i1 must be nonnegative");
  if (!(sigma >= 0.0)) throw std::invalid_argument(std::string(fn) + ": sigma must be nonnegative");
}

} // namespace

BandwidthPlan optimal_bandwidth_recursive(double i1, double i2, double sigma,
                                          double gamma0, std::size_t n) {
  validate_plan_inputs(i1, i2, sigma, "optimal_bandwidth_recursive");
  if (!(gamma0 > 2.0 / 7.0))
    throw std::invalid_argument("optimal_bandwidth_recursive: gamma0 must exceed 2/7");
  if (n < 1) throw std::invalid_argument("optimal_bandwidth_recursive: n must be at least 1");
  double s4 = sigma * sigma * sigma * sigma;
  double c = std::pow(3.0 * s4 / (8.0 * kSqrtPi), 1.0 / 7.0) *
             std::pow(gamma0 - 2.0 / 7.0, 1.0 / 7.0) * std::pow(i1 / i2, 1.0 / 7.0);
  BandwidthPlan plan;
  plan.c = c;
  plan.a = 1.0 / 7.0;
  plan.amise = amise_recursive(i1, i2, sigma, gamma0, n);
  plan.gamma0 = gamma0;
  return plan;
}

BandwidthPlan optimal_bandwidth_batch(double i1, double i2, double sigma, std::size_t n) {
  validate_plan_inputs(i1, i2, sigma, "optimal_bandwidth_batch");
  if (n < 1) throw std::invalid_argument("optimal_bandwidth_batch: n must be at least 1");
  double s4 = sigma * sigma * sigma * sigma;
  double c = std::pow(3.0 * s4 / (4.0 * kSqrtPi), 1.0 / 7.0) *
             std::pow(i1 / i2, 1.0 / 7.0);
  BandwidthPlan plan;
  plan.c = c;
  plan.a = 1.0 / 7.0;
  plan.amise = amise_batch(i1, i2, sigma, n);
  return plan;
}

double amise_recursive(double i1, double i2, double sigma, double gamma0, std::size_t n) {
  validate_plan_inputs(i1, i2, sigma, "amise_recursive");
  if (!(gamma0 > 2.0 / 7.0))
    throw std::invalid_argument("amise_recursive: gamma0 must exceed 2/7");
  if (n < 1) throw std::invalid_argument("amise_recursive: n must be at least 1");
  double s4 = sigma * sigma * sigma * sigma;
  return (7.0 / 12.0) * std::pow(3.0 * s4 / (8.0 * kSqrtPi), 4.0 / 7.0) *
         gamma0 * gamma0 * std::pow(gamma0 - 2.0 / 7.0, -10.0 / 7.0) *
         std::pow(i1, 4.0 / 7.0) * std::pow(i2, 3.0 / 7.0) *
         std::pow(static_cast<double>(n), -4.0 / 7.0);
}

double amise_batch(double i1, double i2, double sigma, std::size_t n) {
  validate_plan_inputs(i1, i2, sigma, "amise_batch");
  if (n < 1) throw std::invalid_argument("amise_batch: n must be at least 1");
  double s4 = sigma * sigma * sigma * sigma;
  return (7.0 / 12.0) * std::pow(3.0 * s4 / (4.0 * kSqrtPi), 4.0 / 7.0) *
         std::pow(i1, 4.0 / 7.0) * std::pow(i2, 3.0 / 7.0) *
         std::pow(static_cast<double>(n), -4.0 / 7.0);
}

namespace {

PipelineFunctionals combine(FunctionalEstimate i1_primary, FunctionalEstimate i1_other,
                            FunctionalEstimate i2_primary, FunctionalEstimate i2_other) {
  PipelineFunctionals out;
  FunctionalEstimate i1 = i1_primary.usable ? i1_primary : i1_other;
  FunctionalEstimate i2 = i2_primary.usable ? i2_primary : i2_other;
  out.i1_fell_back = !i1_primary.usable;
  out.i2_fell_back = !i2_primary.usable;
  out.i1 = i1.value;
  out.i2 = i2.value;
  out.valid = i1.usable && i2.usable;
  return out;
}

} // namespace

AllFunctionals estimate_all_functionals(std::span<const double> data, double sigma) {
  AllFunctionals f;
  f.i1_rec = i1_recursive(data, sigma);
  f.i1_bat = i1_batch(data, sigma);
  f.i2_rec = i2_recursive(data, sigma);
  f.i2_bat = i2_batch(data, sigma);
  return f;
}

PipelineFunctionals recursive_pipeline(const AllFunctionals& f) {
  return combine(f.i1_rec, f.i1_bat, f.i2_rec, f.i2_bat);
}

PipelineFunctionals batch_pipeline(const AllFunctionals& f) {
  return combine(f.i1_bat, f.i1_rec, f.i2_bat, f.i2_rec);
}

PipelineFunctionals recursive_pipeline_functionals(std::span<const double> data, double sigma) {
  return recursive_pipeline(estimate_all_functionals(data, sigma));
}

PipelineFunctionals batch_pipeline_functionals(std::span<const double> data, double sigma) {
  return batch_pipeline(estimate_all_functionals(data, sigma));
}

} // namespace deconv
