#pragma once

#include "deconv/schedules.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace deconv {

//! One estimated density functional. The I2-type estimators are not squares
//! and can come out nonpositive at small n; `usable` flags that so callers
//! can fall back instead of clamping.
struct FunctionalEstimate {
  double value = 0.0;
  bool usable = false;
};

//! Pilot-stepsize constants used inside the functional estimators (these are
//! the MISE-optimal choices for the pilot recursions, independent of the
//! stepsize of the final estimator).
inline constexpr double kI1StepsizeConstant = 1.93;
inline constexpr double kI2StepsizeConstant = 1.736;
inline constexpr double kI1PilotBeta = 2.0 / 9.0;
inline constexpr double kI2PilotBeta = 1.0 / 6.0;

//! Direct triple sums make the I2 estimators O(n^3); above this size they
//! still run but emit a one-line warning to stderr.
inline constexpr std::size_t kFunctionalSoftCap = 2000;

//! Recursively weighted estimator of I1 = int f_Y^2. The index-k average is
//! accumulated by the same forward recursion as the CDF estimator, which
//! avoids the degenerate leading product when the stepsize constant is >= 1.
FunctionalEstimate i1_recursive(std::span<const double> data, double sigma,
                                const PilotBandwidthSpec& pilot);
FunctionalEstimate i1_recursive(std::span<const double> data, double sigma);

//! Recursively weighted estimator of I2 = int (f_X')^2 f_Y via the direct
//! O(n^3) triple sum over (i, j, k), j != k, of products of kernel
//! derivatives.
FunctionalEstimate i2_recursive(std::span<const double> data, double sigma,
                                const PilotBandwidthSpec& pilot);
FunctionalEstimate i2_recursive(std::span<const double> data, double sigma);

//! Leave-one-out batch estimator of I1 at the fixed pilot bandwidth b_n.
FunctionalEstimate i1_batch(std::span<const double> data, double sigma,
                            const PilotBandwidthSpec& pilot);
FunctionalEstimate i1_batch(std::span<const double> data, double sigma);

//! Batch estimator of I2: (1/(n^3 b'^4)) sum_i sum_{j != k} K'_ij K'_ik.
FunctionalEstimate i2_batch(std::span<const double> data, double sigma,
                            const PilotBandwidthSpec& pilot);
FunctionalEstimate i2_batch(std::span<const double> data, double sigma);

//! Optimal-bandwidth recipe: constant c of h_k = c k^{-1/7}, the predicted
//! AMISE* at sample size n, and (for the recursive estimator) the stepsize
//! constant the plan was built for.
struct BandwidthPlan {
  double c = 0.0;
  double a = 1.0 / 7.0;
  double amise = 0.0;
  std::optional<double> gamma0;

  double bandwidth_at(std::size_t k) const;
};

BandwidthPlan optimal_bandwidth_recursive(double i1, double i2, double sigma,
                                          double gamma0, std::size_t n);
BandwidthPlan optimal_bandwidth_batch(double i1, double i2, double sigma, std::size_t n);

double amise_recursive(double i1, double i2, double sigma, double gamma0, std::size_t n);
double amise_batch(double i1, double i2, double sigma, std::size_t n);

//! Functionals feeding one bandwidth pipeline, with fallback bookkeeping.
struct PipelineFunctionals {
  double i1 = 0.0;
  double i2 = 0.0;
  bool valid = false;
  bool i1_fell_back = false;
  bool i2_fell_back = false;
};

//! All four functional estimates on one sample (the O(n^3) sums are done
//! once and shared between the two pipelines).
struct AllFunctionals {
  FunctionalEstimate i1_rec, i1_bat, i2_rec, i2_bat;
};
AllFunctionals estimate_all_functionals(std::span<const double> data, double sigma);

PipelineFunctionals recursive_pipeline(const AllFunctionals& f);
PipelineFunctionals batch_pipeline(const AllFunctionals& f);

//! Recursive pipeline: recursive functionals first, batch fallback when an
//! estimate is nonpositive; invalid when both routes fail.
PipelineFunctionals recursive_pipeline_functionals(std::span<const double> data, double sigma);
//! Batch pipeline, mirrored fallback.
PipelineFunctionals batch_pipeline_functionals(std::span<const double> data, double sigma);

} // namespace deconv
