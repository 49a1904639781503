#include "deconv/simlab.hpp"

#include "deconv/estimators.hpp"
#include "deconv/kernels.hpp"
#include "deconv/plugin.hpp"
#include "deconv/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace deconv {

double sigma_from_nsr(double var_x, double nsr) {
  if (!(var_x > 0.0)) throw std::invalid_argument("sigma_from_nsr: var_x must be positive");
  if (!(nsr >= 0.0)) throw std::invalid_argument("sigma_from_nsr: nsr must be nonnegative");
  return std::sqrt(nsr * var_x / 2.0);
}

ContaminatedSample sample_contaminated(const TrueDistribution& dist, std::size_t n,
                                       double sigma, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_contaminated: n must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sample_contaminated: sigma must be nonnegative");
  ContaminatedSample s;
  s.x.resize(n);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.x[i] = dist.sample(rng);
  if (sigma == 0.0) {
    s.y = s.x;
  } else {
    for (std::size_t i = 0; i < n; ++i) s.y[i] = s.x[i] + rng.laplace(sigma);
  }
  return s;
}

double rmre(std::span<const double> estimate, std::span<const double> truth,
            double threshold) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("rmre: length mismatch");
  if (!(threshold > 0.0)) throw std::invalid_argument("rmre: threshold must be positive");
  stats::NeumaierSum sum;
  std::size_t count = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (std::abs(truth[i]) > threshold) {
      sum.add(std::abs(estimate[i] / truth[i] - 1.0));
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("rmre: no point passes the threshold");
  return sum.value() / static_cast<double>(count);
}

double pearson_cor(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size() || estimate.size() < 2)
    throw std::invalid_argument("pearson_cor: need two equal-length inputs of size >= 2");
  double ma = stats::mean(estimate);
  double mb = stats::mean(truth);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    double da = estimate[i] - ma;
    double db = truth[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0))
    throw std::invalid_argument("pearson_cor: constant input");
  return sab / std::sqrt(saa * sbb);
}

std::string EstimatorSpec::label() const {
  if (kind == Kind::nadaraya) return "nadaraya";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "recursive(%g)", gamma0);
  return buf;
}

void ScenarioConfig::validate() const {
  if (n < 5) throw std::invalid_argument("ScenarioConfig: n must be at least 5");
  if (reps < 1) throw std::invalid_argument("ScenarioConfig: reps must be at least 1");
  if (!(nsr >= 0.0 && nsr <= 0.5))
    throw std::invalid_argument("ScenarioConfig: nsr must lie in [0, 0.5]");
  if (estimators.empty()) throw std::invalid_argument("ScenarioConfig: estimator list is empty");
  if (grid_points < 2) throw std::invalid_argument("ScenarioConfig: grid_points must be at least 2");
  if (!(rmre_threshold > 0.0))
    throw std::invalid_argument("ScenarioConfig: rmre_threshold must be positive");
  for (const auto& e : estimators)
    if (e.kind == EstimatorSpec::Kind::recursive && !(e.gamma0 > 2.0 / 7.0))
      throw std::invalid_argument("ScenarioConfig: recursive gamma0 must exceed 2/7");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct RepOutcome {
  bool valid = false;
  double rmre = 0.0;
  double cor = 0.0;
  double seconds = 0.0;
};

} // namespace

MetricsReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  const std::size_t n_est = config.estimators.size();
  const double var_x = config.dist.variance();
  const double sigma = sigma_from_nsr(var_x, config.nsr);

  std::size_t n_recursive = 0;
  for (const auto& e : config.estimators)
    if (e.kind == EstimatorSpec::Kind::recursive) ++n_recursive;

  // outcome[rep][est]; indexed storage keeps aggregation independent of
  // replication execution order.
  std::vector<std::vector<RepOutcome>> outcome(config.reps,
                                               std::vector<RepOutcome>(n_est));
  std::vector<double> pipeline_seconds_recursive(config.reps, 0.0);
  std::vector<double> pipeline_seconds_batch(config.reps, 0.0);

  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    RngStream rng(config.seed, rep);
    ContaminatedSample sample = sample_contaminated(config.dist, config.n, sigma, rng);
    std::span<const double> y(sample.y);
    std::span<const double> pilot_data =
        y.subspan(0, std::min(config.n, config.functional_cap));

    PipelineFunctionals rec_f, bat_f;
    bool plugin_ok = sigma > 0.0;
    if (sigma > 0.0) {
      auto t0 = Clock::now();
      AllFunctionals all = estimate_all_functionals(pilot_data, sigma);
      double shared = seconds_since(t0);
      // split the shared functional cost between the two pipelines
      pipeline_seconds_recursive[rep] = shared / 2.0;
      pipeline_seconds_batch[rep] = shared / 2.0;
      rec_f = recursive_pipeline(all);
      bat_f = batch_pipeline(all);
    }

    // Bandwidth constants per estimator. At sigma = 0 the deconvolution
    // AMISE formulas degenerate (their sigma^{4/7} factor vanishes), so the
    // error-free mode minimizes the error-free AMISE* instead: the variance
    // reduction is 2 psi(K) I1 h with psi(K) = 1/(2 sqrt(pi)) at r = 0,
    // giving h ~ n^{-1/3} with the constants below. Functional estimates at
    // sigma = 0 already target the error-free I1, I2.
    if (sigma == 0.0) {
      auto t0 = Clock::now();
      AllFunctionals all = estimate_all_functionals(pilot_data, 0.0);
      double shared = seconds_since(t0);
      pipeline_seconds_recursive[rep] = shared / 2.0;
      pipeline_seconds_batch[rep] = shared / 2.0;
      rec_f = recursive_pipeline(all);
      bat_f = batch_pipeline(all);
      plugin_ok = true;
    }

    std::vector<double> est_c(n_est, 0.0);
    std::vector<double> est_a(n_est, 1.0 / 7.0);
    std::vector<bool> est_valid(n_est, true);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (std::size_t e = 0; e < n_est; ++e) {
      const auto& spec = config.estimators[e];
      const PipelineFunctionals& f =
          spec.kind == EstimatorSpec::Kind::recursive ? rec_f : bat_f;
      if (sigma == 0.0) {
        est_a[e] = 1.0 / 3.0;
        if (f.valid) {
          est_c[e] = spec.kind == EstimatorSpec::Kind::recursive
                         ? std::cbrt(f.i1 / (12.0 * sqrt_pi * f.i2))
                         : std::cbrt(f.i1 / (sqrt_pi * f.i2));
        } else {
          est_c[e] = pilot_scale(y); // last-resort rule of thumb
        }
        continue;
      }
      if (!plugin_ok || !f.valid) {
        est_valid[e] = false;
        continue;
      }
      BandwidthPlan plan =
          spec.kind == EstimatorSpec::Kind::recursive
              ? optimal_bandwidth_recursive(f.i1, f.i2, sigma, spec.gamma0, config.n)
              : optimal_bandwidth_batch(f.i1, f.i2, sigma, config.n);
      est_c[e] = plan.c;
    }

    // Evaluation grid spanning the data hull padded by the largest
    // bandwidth in play (h at k = 1 equals the plan constant).
    double h_max = 0.0;
    for (std::size_t e = 0; e < n_est; ++e)
      if (est_valid[e]) h_max = std::max(h_max, est_c[e]);
    if (h_max == 0.0) h_max = 1.0;
    auto [mn, mx] = std::minmax_element(y.begin(), y.end());
    EvaluationGrid grid =
        EvaluationGrid::linspace(*mn - 3.0 * h_max, *mx + 3.0 * h_max, config.grid_points);

    std::vector<double> truth(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      truth[i] = config.dist.cdf(grid.points()[i]);

    for (std::size_t e = 0; e < n_est; ++e) {
      if (!est_valid[e]) continue;
      const auto& spec = config.estimators[e];
      auto t0 = Clock::now();
      std::vector<double> est;
      if (spec.kind == EstimatorSpec::Kind::recursive) {
        RecursiveCdfState state(grid, sigma, StepsizeSchedule{spec.gamma0},
                                BandwidthSchedule{est_c[e], est_a[e]});
        state.update_all(y);
        est = state.values();
      } else {
        double h = BandwidthSchedule{est_c[e], est_a[e]}.at(config.n);
        est = nadaraya_estimate(y, h, sigma, grid);
      }
      RepOutcome& out = outcome[rep][e];
      out.rmre = rmre(est, truth, config.rmre_threshold);
      out.cor = pearson_cor(est, truth);
      out.seconds = seconds_since(t0);
      out.valid = true;
    }
  }

  MetricsReport report;
  report.config = config;
  report.per_estimator.resize(n_est);
  for (std::size_t e = 0; e < n_est; ++e) {
    EstimatorMetrics& m = report.per_estimator[e];
    m.spec = config.estimators[e];
    m.label = m.spec.label();
    m.rep_rmre.assign(config.reps, std::numeric_limits<double>::quiet_NaN());
    stats::NeumaierSum rm, co, se;
    std::size_t valid = 0;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const RepOutcome& out = outcome[rep][e];
      double pipeline_share =
          m.spec.kind == EstimatorSpec::Kind::recursive
              ? pipeline_seconds_recursive[rep] / std::max<std::size_t>(n_recursive, 1)
              : pipeline_seconds_batch[rep] / std::max<std::size_t>(n_est - n_recursive, 1);
      se.add(out.seconds + pipeline_share);
      if (!out.valid) continue;
      m.rep_rmre[rep] = out.rmre;
      rm.add(out.rmre);
      co.add(out.cor);
      ++valid;
    }
    m.excluded_reps = config.reps - valid;
    m.mean_rmre = valid > 0 ? rm.value() / static_cast<double>(valid)
                            : std::numeric_limits<double>::quiet_NaN();
    m.mean_cor = valid > 0 ? co.value() / static_cast<double>(valid)
                           : std::numeric_limits<double>::quiet_NaN();
    m.cpu_seconds = se.value();
  }
  return report;
}

namespace {

// Adaptive Simpson on a smooth piece.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double noisy_density(const TrueDistribution& dist, double x, double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("noisy_density: sigma must be nonnegative");
  if (sigma == 0.0) return dist.pdf(x);
  const double lim = 40.0 * sigma;
  auto integrand = [&](double e) {
    return dist.pdf(x - e) * std::exp(-std::abs(e) / sigma) / (2.0 * sigma);
  };
  // the Laplace kink sits at e = 0; integrate the two smooth halves
  return integrate(integrand, -lim, 0.0, 5e-9) + integrate(integrand, 0.0, lim, 5e-9);
}

namespace {

std::vector<double> probe_replicas(const TrueDistribution& dist, double x, std::size_t n,
                                   double gamma0, std::size_t reps, std::uint64_t seed,
                                   double sigma, double bandwidth_c) {
  if (!(gamma0 > 2.0 / 7.0))
    throw std::invalid_argument("probe: gamma0 must exceed 2/7");
  if (reps < 2) throw std::invalid_argument("probe: need at least two replications");
  if (!(bandwidth_c > 0.0)) throw std::invalid_argument("probe: bandwidth constant must be positive");
  StepsizeSchedule step{gamma0};
  BandwidthSchedule bw{bandwidth_c, 1.0 / 7.0};
  std::vector<double> out(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    RngStream rng(seed, rep);
    ContaminatedSample s = sample_contaminated(dist, n, sigma, rng);
    out[rep] = recursive_point_estimate(s.y, x, sigma, step, bw);
  }
  return out;
}

} // namespace

BiasVarianceProbe bias_variance_probe(const TrueDistribution& dist, double x,
                                      std::size_t n, double gamma0, std::size_t reps,
                                      std::uint64_t seed, double sigma,
                                      double bandwidth_c) {
  std::vector<double> f = probe_replicas(dist, x, n, gamma0, reps, seed, sigma, bandwidth_c);
  BiasVarianceProbe probe;
  probe.mc_bias = stats::mean(f) - dist.cdf(x);
  probe.mc_variance = stats::sample_variance(f);

  const double xi = 1.0 / gamma0;
  const double a = 1.0 / 7.0;
  const double h_n = BandwidthSchedule{bandwidth_c, a}.at(n);
  const double gamma_n = gamma0 / static_cast<double>(n);
  probe.predicted_bias =
      0.5 / (1.0 - 2.0 * a * xi) * h_n * h_n * dist.pdf_deriv(x);
  const double s4 = sigma * sigma * sigma * sigma;
  probe.predicted_variance = s4 / (4.0 * std::sqrt(std::numbers::pi)) /
                             (2.0 - (1.0 - 3.0 * a) * xi) * gamma_n /
                             (h_n * h_n * h_n) * noisy_density(dist, x, sigma);
  return probe;
}

CltSummary clt_probe(const TrueDistribution& dist, double x, std::size_t n,
                     double gamma0, std::size_t reps, std::uint64_t seed,
                     double sigma, double bandwidth_c) {
  std::vector<double> f = probe_replicas(dist, x, n, gamma0, reps, seed, sigma, bandwidth_c);
  double m = stats::mean(f);
  double sd = std::sqrt(stats::sample_variance(f));
  if (!(sd > 0.0)) throw std::invalid_argument("clt_probe: constant replicas");
  std::vector<double> z(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) z[i] = (f[i] - m) / sd;

  CltSummary s;
  s.skewness = stats::skewness(z);
  s.excess_kurtosis = stats::excess_kurtosis(z);
  std::sort(z.begin(), z.end());
  double dev = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double p = (static_cast<double>(i) + 0.5) / static_cast<double>(z.size());
    if (p < 0.01 || p > 0.99) continue;
    dev = std::max(dev, std::abs(z[i] - stats::normal_quantile(p)));
  }
  s.qq_deviation = dev;
  return s;
}

} // namespace deconv
