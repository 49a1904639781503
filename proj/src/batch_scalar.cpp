#include "deconv/batch.hpp"
#include "deconv/kernels.hpp"

namespace deconv::batch::detail::scalar {

void cdf_kernel_mix(const double* xs, std::size_t n, double y, double inv_h,
                    double r, double keep, double gain, double* values) {
  const auto p = DeconvKernelParams::from_ratio(r);
  for (std::size_t i = 0; i < n; ++i) {
    double u = (xs[i] - y) * inv_h;
    values[i] = keep * values[i] + gain * deconv_cdf_kernel(u, p);
  }
}

void deconv_kernel_row(const double* ys, std::size_t n, double yi,
                       double inv_b, double r, double* out) {
  const auto p = DeconvKernelParams::from_ratio(r);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = deconv_kernel((yi - ys[j]) * inv_b, p);
}

void deconv_kernel_row_seq(const double* ys, std::size_t n, double yi,
                           const double* inv_b, const double* r, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const auto p = DeconvKernelParams::from_ratio(r[j]);
    out[j] = deconv_kernel((yi - ys[j]) * inv_b[j], p);
  }
}

void deconv_deriv_row(const double* ys, std::size_t n, double yi,
                      double inv_b, double r, double* out) {
  const auto p = DeconvKernelParams::from_ratio(r);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = deconv_kernel_deriv((yi - ys[j]) * inv_b, p);
}

void deconv_deriv_row_seq(const double* ys, std::size_t n, double yi,
                          const double* inv_b, const double* r, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const auto p = DeconvKernelParams::from_ratio(r[j]);
    out[j] = deconv_kernel_deriv((yi - ys[j]) * inv_b[j], p);
  }
}

double offdiag_product_sum(const double* g, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double gj = g[j];
    double row = 0.0;
    for (std::size_t k = 0; k < n; ++k) row += gj * g[k];
    acc += row - gj * gj;
  }
  return acc;
}

} // namespace deconv::batch::detail::scalar
