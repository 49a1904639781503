#include "deconv/estimators.hpp"

#include "deconv/batch.hpp"
#include "deconv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deconv {

EvaluationGrid EvaluationGrid::linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("EvaluationGrid: need at least two points");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("EvaluationGrid: invalid interval");
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i)
    pts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  pts.back() = hi;
  return EvaluationGrid(std::move(pts));
}

EvaluationGrid EvaluationGrid::from_points(std::vector<double> points) {
  if (points.size() < 2) throw std::invalid_argument("EvaluationGrid: need at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw std::invalid_argument("EvaluationGrid: non-finite point");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw std::invalid_argument("EvaluationGrid: points must be strictly increasing");
  }
  return EvaluationGrid(std::move(points));
}

RecursiveCdfState::RecursiveCdfState(EvaluationGrid grid, double sigma,
                                     StepsizeSchedule stepsize, BandwidthSchedule bandwidth)
    : grid_(std::move(grid)),
      sigma_(sigma),
      stepsize_(stepsize),
      bandwidth_(bandwidth),
      values_(grid_.size(), 0.0) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("RecursiveCdfState: sigma must be nonnegative");
  stepsize_.at(1);
  bandwidth_.at(1);
}

void RecursiveCdfState::update(double y) {
  if (!std::isfinite(y)) throw std::invalid_argument("RecursiveCdfState: non-finite observation");
  const std::size_t k = count_ + 1;
  const double gamma = stepsize_.at(k);
  const double h = bandwidth_.at(k);
  const double r = (sigma_ / h) * (sigma_ / h);
  batch::cdf_kernel_mix(grid_.points().data(), grid_.size(), y, 1.0 / h, r,
                        1.0 - gamma, gamma, values_.data());
  count_ = k;
}

void RecursiveCdfState::update_all(std::span<const double> ys) {
  for (double y : ys) update(y);
}

double RecursiveCdfState::evaluate(double x) const {
  const auto& pts = grid_.points();
  if (!(x >= pts.front() && x <= pts.back()))
    throw std::domain_error("RecursiveCdfState::evaluate: point outside grid hull");
  auto it = std::lower_bound(pts.begin(), pts.end(), x);
  if (it != pts.end() && *it == x) return values_[static_cast<std::size_t>(it - pts.begin())];
  std::size_t hi = static_cast<std::size_t>(it - pts.begin());
  std::size_t lo = hi - 1;
  double t = (x - pts[lo]) / (pts[hi] - pts[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

std::vector<double> nadaraya_estimate(std::span<const double> data, double h,
                                      double sigma, const EvaluationGrid& grid) {
  if (data.empty()) throw std::invalid_argument("nadaraya_estimate: empty data");
  if (!(h > 0.0)) throw std::invalid_argument("nadaraya_estimate: bandwidth must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("nadaraya_estimate: sigma must be nonnegative");
  for (double y : data)
    if (!std::isfinite(y)) throw std::invalid_argument("nadaraya_estimate: non-finite observation");

  const double r = (sigma / h) * (sigma / h);
  std::vector<double> acc(grid.size(), 0.0);
  for (double y : data)
    batch::cdf_kernel_mix(grid.points().data(), grid.size(), y, 1.0 / h, r, 1.0,
                          1.0, acc.data());
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (double& v : acc) v *= inv_n;
  return acc;
}

double recursive_point_estimate(std::span<const double> data, double x, double sigma,
                                const StepsizeSchedule& stepsize,
                                const BandwidthSchedule& bandwidth) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("recursive_point_estimate: sigma must be nonnegative");
  double f = 0.0;
  std::size_t k = 0;
  for (double y : data) {
    if (!std::isfinite(y)) throw std::invalid_argument("recursive_point_estimate: non-finite observation");
    ++k;
    double gamma = stepsize.at(k);
    double h = bandwidth.at(k);
    auto p = DeconvKernelParams::from_sigma_h(sigma, h);
    f = (1.0 - gamma) * f + gamma * deconv_cdf_kernel((x - y) / h, p);
  }
  return f;
}

std::vector<double> clip_monotonize(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  double run = 0.0;
  for (double& v : out) {
    run = std::max(run, std::clamp(v, 0.0, 1.0));
    v = run;
  }
  return out;
}

} // namespace deconv
