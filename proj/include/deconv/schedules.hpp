#pragma once

#include <cstddef>
#include <span>

namespace deconv {

//! Stepsize sequence gamma_k = gamma0 / k of the stochastic approximation
//! update. gamma0 > 1 is legitimate (the plug-in functionals use 1.93 and
//! 1.736); only positivity is required.
struct StepsizeSchedule {
  double gamma0 = 1.0;
  double at(std::size_t k) const;
};

//! Power-law bandwidth sequence h_k = c * k^{-a}. a = 0 gives the constant
//! bandwidth used by the batch estimator and by the reduction identity; a in
//! (0, 1) gives the strictly decreasing schedules, with a = 1/7 the
//! AMISE-optimal exponent.
struct BandwidthSchedule {
  double c = 1.0;
  double a = 1.0 / 7.0;
  double at(std::size_t k) const;
};

//! Pilot bandwidth sequence b_k = scale * k^{-beta} driving the functional
//! estimators; scale = min{sample sd, IQR/1.349}.
struct PilotBandwidthSpec {
  double beta = 2.0 / 9.0;
  double scale = 1.0;
  double at(std::size_t k) const;
};

//! Robust scale min{s_hat, (Q3-Q1)/1.349} with type-7 quantiles. Falls back
//! to the standard deviation when the IQR is zero; throws when the sample is
//! degenerate (all values equal) or shorter than two.
double pilot_scale(std::span<const double> sample);

PilotBandwidthSpec make_pilot(std::span<const double> sample, double beta);

//! Diagnostic index of regular variation: n * (1 - v_{n-1}/v_n) at the last
//! index of the sequence. For v_k = k^g this approaches g.
double gs_index_probe(std::span<const double> seq);

} // namespace deconv
