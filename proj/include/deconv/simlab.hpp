#pragma once

#include "deconv/distributions.hpp"
#include "deconv/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace deconv {

//! Laplace scale from the noise-to-signal ratio NSR = Var(eps)/Var(X);
//! Var(eps) = 2 sigma^2 for a Laplace(sigma) error.
double sigma_from_nsr(double var_x, double nsr);

struct ContaminatedSample {
  std::vector<double> x; // clean draws
  std::vector<double> y; // x + Laplace noise
};

//! Draws x from dist, then Laplace(sigma) errors, y = x + eps. The clean
//! block is drawn first so samples at different NSR share x for a given
//! stream.
ContaminatedSample sample_contaminated(const TrueDistribution& dist, std::size_t n,
                                       double sigma, RngStream& rng);

//! Robust mean relative error: mean of |estimate/truth - 1| over positions
//! where |truth| > threshold. Throws if nothing passes the threshold.
double rmre(std::span<const double> estimate, std::span<const double> truth,
            double threshold);

//! Pearson correlation; throws on constant input.
double pearson_cor(std::span<const double> estimate, std::span<const double> truth);

//! One estimator variant of a scenario.
struct EstimatorSpec {
  enum class Kind { nadaraya, recursive };
  Kind kind = Kind::recursive;
  double gamma0 = 1.0; // recursive only
  std::string label() const;
};

struct ScenarioConfig {
  TrueDistribution dist = TrueDistribution::normal(0.0, 1.0);
  std::size_t n = 50;
  double nsr = 0.1;
  std::size_t reps = 500;
  std::uint64_t seed = 1;
  std::vector<EstimatorSpec> estimators;
  std::size_t grid_points = 101;
  double rmre_threshold = 0.01;
  //! Observation-count cap for the O(n^3) plug-in functionals; larger
  //! samples use the first `functional_cap` observations for the pilot
  //! functionals only.
  std::size_t functional_cap = 2000;

  void validate() const;
};

struct EstimatorMetrics {
  std::string label;
  EstimatorSpec spec;
  double mean_rmre = 0.0;
  double mean_cor = 0.0;
  double cpu_seconds = 0.0;
  std::size_t excluded_reps = 0;
  //! Per-replication RMRE, NaN where the replication was excluded.
  std::vector<double> rep_rmre;
};

struct MetricsReport {
  ScenarioConfig config;
  std::vector<EstimatorMetrics> per_estimator;
};

//! Runs one simulation cell. Replication k draws all randomness from the
//! stream (seed, k), so the report is a pure function of the config.
MetricsReport run_scenario(const ScenarioConfig& config);

//! Contaminated-data density f_Y = f_X * Laplace(sigma) by adaptive
//! quadrature (exact f_X at sigma = 0).
double noisy_density(const TrueDistribution& dist, double x, double sigma);

//! Monte Carlo bias/variance of the recursive estimator at one point against
//! the first-order asymptotic predictions (stepsize gamma0/n, bandwidth
//! c n^{-1/7}).
struct BiasVarianceProbe {
  double mc_bias = 0.0;
  double mc_variance = 0.0;
  double predicted_bias = 0.0;
  double predicted_variance = 0.0;
};

BiasVarianceProbe bias_variance_probe(const TrueDistribution& dist, double x,
                                      std::size_t n, double gamma0, std::size_t reps,
                                      std::uint64_t seed, double sigma,
                                      double bandwidth_c);

//! Shape-of-distribution summary of the standardized estimator replicas.
struct CltSummary {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  //! Largest |z_(i) - Phi^{-1}(p_i)| over the central 98% of order stats.
  double qq_deviation = 0.0;
};

CltSummary clt_probe(const TrueDistribution& dist, double x, std::size_t n,
                     double gamma0, std::size_t reps, std::uint64_t seed,
                     double sigma, double bandwidth_c);

} // namespace deconv
