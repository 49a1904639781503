#pragma once

#include <cstddef>

namespace deconv {

//! Parameters of the Gaussian-kernel / Laplace-error deconvoluting kernel
//! family. The shape is governed entirely by the dimensionless ratio
//! r = sigma^2 / h^2, which is recomputed from (sigma, h) on construction and
//! never stored inconsistently. r = 0 iff sigma = 0 (error-free reduction).
struct DeconvKernelParams {
  double sigma = 0.0;
  double h = 1.0;
  double r = 0.0;

  static DeconvKernelParams from_sigma_h(double sigma, double h);
  //! Convenience for tests and tabulation: h = 1, sigma = sqrt(r).
  static DeconvKernelParams from_ratio(double r);
};

//! Standard normal density (2*pi)^{-1/2} exp(-u^2/2).
double gauss_pdf(double u);

//! Standard normal distribution function.
double gauss_cdf(double u);

//! Deconvoluting kernel (2*pi)^{-1/2} exp(-u^2/2) (1 + r (1 - u^2)).
//! Negative lobes for |u| > sqrt(1 + 1/r) are expected.
double deconv_kernel(double u, const DeconvKernelParams& p);

//! Integral of deconv_kernel: gauss_cdf(u) + r u gauss_pdf(u). Tends to 0 at
//! -inf and 1 at +inf but is not confined to [0,1] when r > 0.
double deconv_cdf_kernel(double u, const DeconvKernelParams& p);

//! First derivative of deconv_kernel: -u gauss_pdf(u) (1 + r (3 - u^2)).
double deconv_kernel_deriv(double u, const DeconvKernelParams& p);

//! Reference implementation of the kernel by trapezoidal quadrature of its
//! Fourier representation (2*pi)^{-1} \int e^{-itu} e^{-t^2/2} (1 + r t^2) dt
//! over [-t_max, t_max]. Used to validate the closed form; rejects quadrature
//! settings too coarse for the 1e-6 oracle contract (t_max < 8 or dt > 0.05).
double fourier_inversion_oracle(double u, const DeconvKernelParams& p,
                                double t_max = 12.0, double dt = 0.01);

//! Composite-Simpson settings for psi_functional. `points` must be odd.
struct QuadratureSpec {
  double lo = -20.0;
  double hi = 20.0;
  std::size_t points = 8001;
};

//! psi = \int u K(u) KK(u) du for the deconvoluting pair (K, KK), evaluated
//! numerically. Exact value is (4 - 4r - r^2) / (8 sqrt(pi)).
double psi_functional(const DeconvKernelParams& p, const QuadratureSpec& q = {});

} // namespace deconv
