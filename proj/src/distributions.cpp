#include "deconv/distributions.hpp"

#include "deconv/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace deconv {

namespace {

double normal_pdf(double x, double mean, double var) {
  return gauss_pdf((x - mean) / std::sqrt(var)) / std::sqrt(var);
}

std::string short_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

} // namespace

TrueDistribution TrueDistribution::normal(double mean, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("TrueDistribution: variance must be positive");
  return TrueDistribution(Family::normal, mean, variance);
}

TrueDistribution TrueDistribution::mixture_half_half() {
  return TrueDistribution(Family::normal_mixture, 0.5, 1.0);
}

TrueDistribution TrueDistribution::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("TrueDistribution: rate must be positive");
  return TrueDistribution(Family::exponential, rate, 0.0);
}

TrueDistribution TrueDistribution::parse(const std::string& text) {
  if (text == "mixture") return mixture_half_half();
  double a = 0.0, b = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "normal(%lf,%lf%c", &a, &b, &tail) == 3 && tail == ')')
    return normal(a, b);
  if (std::sscanf(text.c_str(), "exponential(%lf%c", &a, &tail) == 2 && tail == ')')
    return exponential(a);
  throw std::invalid_argument("TrueDistribution: cannot parse '" + text + "'");
}

double TrueDistribution::pdf(double x) const {
  switch (family_) {
    case Family::normal:
      return normal_pdf(x, p1_, p2_);
    case Family::normal_mixture:
      return 0.5 * normal_pdf(x, p1_, p2_) + 0.5 * normal_pdf(x, -p1_, p2_);
    case Family::exponential:
      return x < 0.0 ? 0.0 : p1_ * std::exp(-p1_ * x);
  }
  return 0.0;
}

double TrueDistribution::cdf(double x) const {
  switch (family_) {
    case Family::normal:
      return gauss_cdf((x - p1_) / std::sqrt(p2_));
    case Family::normal_mixture:
      return 0.5 * gauss_cdf(x - p1_) + 0.5 * gauss_cdf(x + p1_);
    case Family::exponential:
      return x < 0.0 ? 0.0 : -std::expm1(-p1_ * x);
  }
  return 0.0;
}

double TrueDistribution::pdf_deriv(double x) const {
  switch (family_) {
    case Family::normal:
      return -(x - p1_) / p2_ * normal_pdf(x, p1_, p2_);
    case Family::normal_mixture:
      return 0.5 * (-(x - p1_) / p2_) * normal_pdf(x, p1_, p2_) +
             0.5 * (-(x + p1_) / p2_) * normal_pdf(x, -p1_, p2_);
    case Family::exponential:
      return x <= 0.0 ? 0.0 : -p1_ * p1_ * std::exp(-p1_ * x);
  }
  return 0.0;
}

double TrueDistribution::variance() const {
  switch (family_) {
    case Family::normal:
      return p2_;
    case Family::normal_mixture:
      return p2_ + p1_ * p1_; // component variance plus mean spread
    case Family::exponential:
      return 1.0 / (p1_ * p1_);
  }
  return 0.0;
}

double TrueDistribution::sample(RngStream& rng) const {
  switch (family_) {
    case Family::normal:
      return p1_ + std::sqrt(p2_) * rng.normal();
    case Family::normal_mixture: {
      double side = rng.uniform01() < 0.5 ? p1_ : -p1_;
      return side + rng.normal();
    }
    case Family::exponential:
      return rng.exponential(p1_);
  }
  return 0.0;
}

std::string TrueDistribution::name() const {
  switch (family_) {
    case Family::normal:
      return "normal(" + short_number(p1_) + "," + short_number(p2_) + ")";
    case Family::normal_mixture:
      return "mixture";
    case Family::exponential:
      return "exponential(" + short_number(p1_) + ")";
  }
  return "?";
}

} // namespace deconv
