#include "deconv/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
// exp(-u^2/2) underflows past ~|u| = 38.6; cut a little above to skip the
// transcendental work on arguments whose true value is below 1e-300.
constexpr double kArgCutoff = 40.0;

} // namespace

DeconvKernelParams DeconvKernelParams::from_sigma_h(double sigma, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("DeconvKernelParams: h must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("DeconvKernelParams: sigma must be nonnegative");
  DeconvKernelParams p;
  p.sigma = sigma;
  p.h = h;
  p.r = (sigma / h) * (sigma / h);
  return p;
}

DeconvKernelParams DeconvKernelParams::from_ratio(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("DeconvKernelParams: ratio must be nonnegative");
  DeconvKernelParams p;
  p.sigma = std::sqrt(r);
  p.h = 1.0;
  p.r = r;
  return p;
}

double gauss_pdf(double u) {
  if (std::abs(u) > kArgCutoff) return 0.0;
  return kInvSqrt2Pi * std::exp(-0.5 * u * u);
}

double gauss_cdf(double u) {
  if (u > kArgCutoff) return 1.0;
  if (u < -kArgCutoff) return 0.0;
  return 0.5 * std::erfc(-u * std::numbers::sqrt2 / 2.0);
}

double deconv_kernel(double u, const DeconvKernelParams& p) {
  if (std::abs(u) > kArgCutoff) return 0.0;
  return gauss_pdf(u) * (1.0 + p.r * (1.0 - u * u));
}

double deconv_cdf_kernel(double u, const DeconvKernelParams& p) {
  if (u > kArgCutoff) return 1.0;
  if (u < -kArgCutoff) return 0.0;
  return gauss_cdf(u) + p.r * u * gauss_pdf(u);
}

double deconv_kernel_deriv(double u, const DeconvKernelParams& p) {
  if (std::abs(u) > kArgCutoff) return 0.0;
  return -u * gauss_pdf(u) * (1.0 + p.r * (3.0 - u * u));
}

double fourier_inversion_oracle(double u, const DeconvKernelParams& p,
                                double t_max, double dt) {
  if (!(t_max > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("fourier_inversion_oracle: t_max and dt must be positive");
  if (t_max < 8.0)
    throw std::invalid_argument("fourier_inversion_oracle: t_max < 8 is too short for the 1e-6 contract");
  if (dt > 0.05)
    throw std::invalid_argument("fourier_inversion_oracle: dt > 0.05 is too coarse for the 1e-6 contract");

  const auto half_steps = static_cast<std::size_t>(std::llround(t_max / dt));
  const std::size_t total = 2 * half_steps;
  double sum = 0.0;
  for (std::size_t j = 0; j <= total; ++j) {
    double t = -t_max + static_cast<double>(j) * dt;
    double f = std::exp(-0.5 * t * t) * (1.0 + p.r * t * t) * std::cos(t * u);
    sum += (j == 0 || j == total) ? 0.5 * f : f;
  }
  return sum * dt / (2.0 * std::numbers::pi);
}

double psi_functional(const DeconvKernelParams& p, const QuadratureSpec& q) {
  if (!(q.hi > q.lo)) throw std::invalid_argument("psi_functional: empty quadrature interval");
  if (q.points < 3 || q.points % 2 == 0)
    throw std::invalid_argument("psi_functional: points must be odd and at least 3");

  const double step = (q.hi - q.lo) / static_cast<double>(q.points - 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < q.points; ++j) {
    double u = q.lo + static_cast<double>(j) * step;
    double f = u * deconv_kernel(u, p) * deconv_cdf_kernel(u, p);
    double w = (j == 0 || j == q.points - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * step / 3.0;
}

} // namespace deconv
