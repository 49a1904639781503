#include "deconv/batch.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace deconv::batch {

namespace {

Backend detect_backend() {
#if defined(DECONV_HAVE_AVX2) && defined(__x86_64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    if (const char* env = std::getenv("DECONV_SIMD")) {
      if (std::string(env) == "scalar") return Backend::scalar;
    }
    return Backend::avx2;
  }
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_backend()};

} // namespace

bool avx2_available() {
#if defined(DECONV_HAVE_AVX2) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::runtime_error("set_backend: avx2 not available on this CPU/build");
  g_backend.store(b, std::memory_order_relaxed);
}

#if defined(DECONV_HAVE_AVX2)
#define DECONV_DISPATCH(fn, ...)                   \
  (active_backend() == Backend::avx2               \
       ? detail::avx2::fn(__VA_ARGS__)             \
       : detail::scalar::fn(__VA_ARGS__))
#else
#define DECONV_DISPATCH(fn, ...) detail::scalar::fn(__VA_ARGS__)
#endif

void cdf_kernel_mix(const double* xs, std::size_t n, double y, double inv_h,
                    double r, double keep, double gain, double* values) {
  DECONV_DISPATCH(cdf_kernel_mix, xs, n, y, inv_h, r, keep, gain, values);
}

void deconv_kernel_row(const double* ys, std::size_t n, double yi,
                       double inv_b, double r, double* out) {
  DECONV_DISPATCH(deconv_kernel_row, ys, n, yi, inv_b, r, out);
}

void deconv_kernel_row_seq(const double* ys, std::size_t n, double yi,
                           const double* inv_b, const double* r, double* out) {
  DECONV_DISPATCH(deconv_kernel_row_seq, ys, n, yi, inv_b, r, out);
}

void deconv_deriv_row(const double* ys, std::size_t n, double yi,
                      double inv_b, double r, double* out) {
  DECONV_DISPATCH(deconv_deriv_row, ys, n, yi, inv_b, r, out);
}

void deconv_deriv_row_seq(const double* ys, std::size_t n, double yi,
                          const double* inv_b, const double* r, double* out) {
  DECONV_DISPATCH(deconv_deriv_row_seq, ys, n, yi, inv_b, r, out);
}

double offdiag_product_sum(const double* g, std::size_t n) {
  return DECONV_DISPATCH(offdiag_product_sum, g, n);
}

#undef DECONV_DISPATCH

} // namespace deconv::batch
