#pragma once

#include <cstddef>
#include <string>

namespace deconv::batch {

//! Backend used for the array kernels below. `scalar` is the reference
//! implementation; `avx2` is selected at startup when the CPU supports
//! AVX2+FMA (override with the DECONV_SIMD environment variable, values
//! "scalar" or "avx2"). Both backends are always compiled in when the
//! toolchain allows, and the test suite checks their equivalence.
enum class Backend { scalar, avx2 };

Backend active_backend();
std::string backend_name(Backend b);
bool avx2_available();
//! Force a backend (throws if avx2 is requested but unavailable).
void set_backend(Backend b);

// Dispatched array kernels. All pointers may not alias unless stated.
//
// values[i] = keep * values[i] + gain * KK((xs[i] - y) * inv_h)   with
// KK the deconvoluting CDF kernel at ratio r. keep = 1 - gamma, gain = gamma
// gives one stochastic-approximation update; keep = gain = 1 accumulates.
void cdf_kernel_mix(const double* xs, std::size_t n, double y, double inv_h,
                    double r, double keep, double gain, double* values);

//! out[j] = K((yi - ys[j]) * inv_b) at ratio r (deconvoluting kernel).
void deconv_kernel_row(const double* ys, std::size_t n, double yi,
                       double inv_b, double r, double* out);

//! Per-column bandwidths: out[j] = K((yi - ys[j]) * inv_b[j]) at ratio r[j].
void deconv_kernel_row_seq(const double* ys, std::size_t n, double yi,
                           const double* inv_b, const double* r, double* out);

//! out[j] = K'((yi - ys[j]) * inv_b) at ratio r (kernel derivative).
void deconv_deriv_row(const double* ys, std::size_t n, double yi,
                      double inv_b, double r, double* out);

void deconv_deriv_row_seq(const double* ys, std::size_t n, double yi,
                          const double* inv_b, const double* r, double* out);

//! sum over ordered pairs (j, k), j != k, of g[j] * g[k].
double offdiag_product_sum(const double* g, std::size_t n);

namespace detail::scalar {
void cdf_kernel_mix(const double* xs, std::size_t n, double y, double inv_h,
                    double r, double keep, double gain, double* values);
void deconv_kernel_row(const double* ys, std::size_t n, double yi,
                       double inv_b, double r, double* out);
void deconv_kernel_row_seq(const double* ys, std::size_t n, double yi,
                           const double* inv_b, const double* r, double* out);
void deconv_deriv_row(const double* ys, std::size_t n, double yi,
                      double inv_b, double r, double* out);
void deconv_deriv_row_seq(const double* ys, std::size_t n, double yi,
                          const double* inv_b, const double* r, double* out);
double offdiag_product_sum(const double* g, std::size_t n);
} // namespace detail::scalar

#if defined(DECONV_HAVE_AVX2)
namespace detail::avx2 {
void cdf_kernel_mix(const double* xs, std::size_t n, double y, double inv_h,
                    double r, double keep, double gain, double* values);
void deconv_kernel_row(const double* ys, std::size_t n, double yi,
                       double inv_b, double r, double* out);
void deconv_kernel_row_seq(const double* ys, std::size_t n, double yi,
                           const double* inv_b, const double* r, double* out);
void deconv_deriv_row(const double* ys, std::size_t n, double yi,
                      double inv_b, double r, double* out);
void deconv_deriv_row_seq(const double* ys, std::size_t n, double yi,
                          const double* inv_b, const double* r, double* out);
double offdiag_product_sum(const double* g, std::size_t n);
} // namespace detail::avx2
#endif

} // namespace deconv::batch
