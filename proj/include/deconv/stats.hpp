#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace deconv::stats {

double mean(std::span<const double> x);

//! Sample variance with divisor n-1. Requires at least two elements.
double sample_variance(std::span<const double> x);
double sample_sd(std::span<const double> x);

//! Type-7 quantile (linear interpolation between order statistics).
//! `sorted` must be ascending and nonempty, p in [0,1].
double quantile_type7(std::span<const double> sorted, double p);

double skewness(std::span<const double> x);
double excess_kurtosis(std::span<const double> x);

//! Inverse of the standard normal CDF, accurate to ~1e-15.
double normal_quantile(double p);

//! Neumaier variant of compensated summation.
class NeumaierSum {
public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace deconv::stats
