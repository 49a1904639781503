#pragma once

#include "deconv/schedules.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace deconv {

//! Fixed set of evaluation points: strictly increasing, finite, at least two.
class EvaluationGrid {
public:
  static EvaluationGrid linspace(double lo, double hi, std::size_t n);
  static EvaluationGrid from_points(std::vector<double> points);

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

private:
  explicit EvaluationGrid(std::vector<double> points) : points_(std::move(points)) {}
  std::vector<double> points_;
};

//! Streaming state of the stochastic-approximation CDF estimator on a grid.
//! Starts from the all-zero function; each contaminated observation y moves
//! every grid value by
//!    F_k(x) = (1 - gamma_k) F_{k-1}(x) + gamma_k KK((x - y) / h_k).
//! The recursive form is used throughout; the equivalent product-weighted
//! form degenerates at gamma0 = 1 (its leading factor vanishes).
//! Values are not clipped to [0,1]: deconvolution estimates legitimately
//! overshoot. Single-owner mutable during updates, read-only afterwards.
class RecursiveCdfState {
public:
  RecursiveCdfState(EvaluationGrid grid, double sigma, StepsizeSchedule stepsize,
                    BandwidthSchedule bandwidth);

  //! Consume one contaminated observation. Rejects non-finite input.
  void update(double y);
  void update_all(std::span<const double> ys);

  std::size_t count() const { return count_; }
  const std::vector<double>& values() const { return values_; }
  const EvaluationGrid& grid() const { return grid_; }
  double sigma() const { return sigma_; }

  //! Linear interpolation between neighbouring grid values; rejects points
  //! outside the grid hull.
  double evaluate(double x) const;

private:
  EvaluationGrid grid_;
  double sigma_;
  StepsizeSchedule stepsize_;
  BandwidthSchedule bandwidth_;
  std::size_t count_ = 0;
  std::vector<double> values_;
};

//! Batch deconvolution CDF estimator: mean over observations of
//! KK((x - Y_i)/h) at constant bandwidth h.
std::vector<double> nadaraya_estimate(std::span<const double> data, double h,
                                      double sigma, const EvaluationGrid& grid);

//! Single-point variant of the recursive estimator (used by the asymptotic
//! probes, which never need a grid).
double recursive_point_estimate(std::span<const double> data, double x, double sigma,
                                const StepsizeSchedule& stepsize,
                                const BandwidthSchedule& bandwidth);

//! Post-hoc utility: clamp to [0,1] and make nondecreasing (running max).
//! Provided for presentation only; metrics are always computed on raw values.
std::vector<double> clip_monotonize(std::span<const double> values);

} // namespace deconv
