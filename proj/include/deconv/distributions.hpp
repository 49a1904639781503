#pragma once

#include "deconv/rng.hpp"

#include <string>

namespace deconv {

//! Ground-truth signal distributions of the simulation study. Each family
//! carries a closed-form density, distribution function, density derivative
//! and variance, plus exact inverse-CDF / Box-Muller sampling.
class TrueDistribution {
public:
  enum class Family { normal, normal_mixture, exponential };

  static TrueDistribution normal(double mean, double variance);
  //! The symmetric two-component mixture (1/2) N(1/2, 1) + (1/2) N(-1/2, 1).
  static TrueDistribution mixture_half_half();
  static TrueDistribution exponential(double rate);

  //! Accepts "normal(mu,var)", "mixture", "exponential(rate)".
  static TrueDistribution parse(const std::string& text);

  double pdf(double x) const;
  double cdf(double x) const;
  double pdf_deriv(double x) const;
  double variance() const;
  double sample(RngStream& rng) const;
  std::string name() const;
  Family family() const { return family_; }

private:
  TrueDistribution(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}

  Family family_;
  double p1_; // normal: mean, exponential: rate
  double p2_; // normal: variance
};

} // namespace deconv
