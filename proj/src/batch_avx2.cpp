#include "deconv/batch.hpp"

#if defined(DECONV_HAVE_AVX2)

#include "avx2_math.hpp"

namespace deconv::batch::detail::avx2 {

namespace {

using avx2_math::vexp;
using avx2_math::vgauss_cdf;

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kArgCutoff = 40.0;

inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline __m256d vgauss_pdf(__m256d u) {
  __m256d e = vexp(_mm256_mul_pd(_mm256_mul_pd(u, u), _mm256_set1_pd(-0.5)));
  return _mm256_mul_pd(_mm256_set1_pd(kInvSqrt2Pi), e);
}

// K(u; r) = phi(u) (1 + r (1 - u^2)), zero past the cutoff.
inline __m256d vdeconv_kernel(__m256d u, __m256d r) {
  __m256d u2 = _mm256_mul_pd(u, u);
  __m256d poly = _mm256_fmadd_pd(r, _mm256_sub_pd(_mm256_set1_pd(1.0), u2),
                                 _mm256_set1_pd(1.0));
  __m256d val = _mm256_mul_pd(vgauss_pdf(u), poly);
  __m256d keep = _mm256_cmp_pd(vabs(u), _mm256_set1_pd(kArgCutoff), _CMP_LE_OQ);
  return _mm256_and_pd(val, keep);
}

// K'(u; r) = -u phi(u) (1 + r (3 - u^2)), zero past the cutoff.
inline __m256d vdeconv_deriv(__m256d u, __m256d r) {
  __m256d u2 = _mm256_mul_pd(u, u);
  __m256d poly = _mm256_fmadd_pd(r, _mm256_sub_pd(_mm256_set1_pd(3.0), u2),
                                 _mm256_set1_pd(1.0));
  __m256d val = _mm256_mul_pd(
      _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), u), vgauss_pdf(u)),
      poly);
  __m256d keep = _mm256_cmp_pd(vabs(u), _mm256_set1_pd(kArgCutoff), _CMP_LE_OQ);
  return _mm256_and_pd(val, keep);
}

// KK(u; r) = Phi(u) + r u phi(u), clamped to {0,1} past the cutoff.
inline __m256d vdeconv_cdf(__m256d u, __m256d r) {
  __m256d val = _mm256_fmadd_pd(_mm256_mul_pd(r, u), vgauss_pdf(u),
                                vgauss_cdf(u));
  __m256d over = _mm256_cmp_pd(u, _mm256_set1_pd(kArgCutoff), _CMP_GT_OQ);
  __m256d under = _mm256_cmp_pd(u, _mm256_set1_pd(-kArgCutoff), _CMP_LT_OQ);
  val = _mm256_blendv_pd(val, _mm256_set1_pd(1.0), over);
  return _mm256_andnot_pd(under, val);
}

} // namespace

void cdf_kernel_mix(const double* xs, std::size_t n, double y, double inv_h,
                    double r, double keep, double gain, double* values) {
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d vih = _mm256_set1_pd(inv_h);
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vkeep = _mm256_set1_pd(keep);
  const __m256d vgain = _mm256_set1_pd(gain);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d u = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(xs + i), vy), vih);
    __m256d kk = vdeconv_cdf(u, vr);
    __m256d v = _mm256_loadu_pd(values + i);
    _mm256_storeu_pd(values + i,
                     _mm256_fmadd_pd(vkeep, v, _mm256_mul_pd(vgain, kk)));
  }
  if (i < n)
    scalar::cdf_kernel_mix(xs + i, n - i, y, inv_h, r, keep, gain, values + i);
}

void deconv_kernel_row(const double* ys, std::size_t n, double yi,
                       double inv_b, double r, double* out) {
  const __m256d vyi = _mm256_set1_pd(yi);
  const __m256d vib = _mm256_set1_pd(inv_b);
  const __m256d vr = _mm256_set1_pd(r);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d u = _mm256_mul_pd(_mm256_sub_pd(vyi, _mm256_loadu_pd(ys + j)), vib);
    _mm256_storeu_pd(out + j, vdeconv_kernel(u, vr));
  }
  if (j < n) scalar::deconv_kernel_row(ys + j, n - j, yi, inv_b, r, out + j);
}

void deconv_kernel_row_seq(const double* ys, std::size_t n, double yi,
                           const double* inv_b, const double* r, double* out) {
  const __m256d vyi = _mm256_set1_pd(yi);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d u = _mm256_mul_pd(_mm256_sub_pd(vyi, _mm256_loadu_pd(ys + j)),
                              _mm256_loadu_pd(inv_b + j));
    _mm256_storeu_pd(out + j, vdeconv_kernel(u, _mm256_loadu_pd(r + j)));
  }
  if (j < n)
    scalar::deconv_kernel_row_seq(ys + j, n - j, yi, inv_b + j, r + j, out + j);
}

void deconv_deriv_row(const double* ys, std::size_t n, double yi,
                      double inv_b, double r, double* out) {
  const __m256d vyi = _mm256_set1_pd(yi);
  const __m256d vib = _mm256_set1_pd(inv_b);
  const __m256d vr = _mm256_set1_pd(r);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d u = _mm256_mul_pd(_mm256_sub_pd(vyi, _mm256_loadu_pd(ys + j)), vib);
    _mm256_storeu_pd(out + j, vdeconv_deriv(u, vr));
  }
  if (j < n) scalar::deconv_deriv_row(ys + j, n - j, yi, inv_b, r, out + j);
}

void deconv_deriv_row_seq(const double* ys, std::size_t n, double yi,
                          const double* inv_b, const double* r, double* out) {
  const __m256d vyi = _mm256_set1_pd(yi);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d u = _mm256_mul_pd(_mm256_sub_pd(vyi, _mm256_loadu_pd(ys + j)),
                              _mm256_loadu_pd(inv_b + j));
    _mm256_storeu_pd(out + j, vdeconv_deriv(u, _mm256_loadu_pd(r + j)));
  }
  if (j < n)
    scalar::deconv_deriv_row_seq(ys + j, n - j, yi, inv_b + j, r + j, out + j);
}

double offdiag_product_sum(const double* g, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double gj = g[j];
    const __m256d vgj = _mm256_set1_pd(gj);
    __m256d vacc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
      vacc = _mm256_fmadd_pd(vgj, _mm256_loadu_pd(g + k), vacc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vacc);
    double row = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; k < n; ++k) row += gj * g[k];
    acc += row - gj * gj;
  }
  return acc;
}

} // namespace deconv::batch::detail::avx2

#endif // DECONV_HAVE_AVX2
