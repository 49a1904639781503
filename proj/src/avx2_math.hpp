#pragma once

// Vectorized exp and normal CDF used by the AVX2 backend. Translation unit
// including this header must be compiled with -mavx2 -mfma.

#include <immintrin.h>

namespace deconv::batch::detail::avx2_math {

// exp(x) for x in [-709, +small]; arguments below -709 flush to 0.
// Range reduction x = n*ln2 + s followed by the classic Cephes rational
// approximation e^s = 1 + 2 s P(s^2) / (Q(s^2) - s P(s^2)).
inline __m256d vexp(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(0.693145751953125);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  x = _mm256_min_pd(x, _mm256_set1_pd(708.0));

  __m256d n = _mm256_round_pd(_mm256_fmadd_pd(x, log2e, half),
                              _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  // n computed as floor(x*log2e + 0.5) = round-to-nearest for our range
  __m256d s = _mm256_fnmadd_pd(n, c1, x);
  s = _mm256_fnmadd_pd(n, c2, s);
  __m256d z = _mm256_mul_pd(s, s);

  __m256d px = _mm256_fmadd_pd(p0, z, p1);
  px = _mm256_fmadd_pd(px, z, p2);
  px = _mm256_mul_pd(px, s);
  __m256d qx = _mm256_fmadd_pd(q0, z, q1);
  qx = _mm256_fmadd_pd(qx, z, q2);
  qx = _mm256_fmadd_pd(qx, z, q3);

  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, one);

  // scale by 2^n through the exponent field
  __m128i ni = _mm256_cvtpd_epi32(n);
  __m256i nl = _mm256_cvtepi32_epi64(ni);
  __m256i pow2 =
      _mm256_slli_epi64(_mm256_add_epi64(nl, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));

  return _mm256_andnot_pd(underflow, e);
}

// Standard normal CDF from the SPECFUN (W. J. Cody) rational approximations
// for erf/erfc, computed branch-free with blends. Matches the scalar libm
// path to a few ulp.
inline __m256d vgauss_cdf(__m256d x) {
  const __m256d inv_sqrt2 = _mm256_set1_pd(0.70710678118654752440);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);

  __m256d t = _mm256_mul_pd(x, inv_sqrt2);
  __m256d sign_neg = _mm256_cmp_pd(t, _mm256_setzero_pd(), _CMP_LT_OQ);
  __m256d y = _mm256_andnot_pd(_mm256_set1_pd(-0.0), t); // |t|

  // --- branch A: y <= 0.46875, erf(y) = y * R1(y^2)
  const __m256d a0 = _mm256_set1_pd(3.16112374387056560e0);
  const __m256d a1 = _mm256_set1_pd(1.13864154151050156e2);
  const __m256d a2 = _mm256_set1_pd(3.77485237685302021e2);
  const __m256d a3 = _mm256_set1_pd(3.20937758913846947e3);
  const __m256d a4 = _mm256_set1_pd(1.85777706184603153e-1);
  const __m256d b0 = _mm256_set1_pd(2.36012909523441209e1);
  const __m256d b1 = _mm256_set1_pd(2.44024637934444173e2);
  const __m256d b2 = _mm256_set1_pd(1.28261652607737228e3);
  const __m256d b3 = _mm256_set1_pd(2.84423683343917062e3);

  __m256d z = _mm256_mul_pd(y, y);
  __m256d num = _mm256_fmadd_pd(a4, z, a0);
  __m256d den = _mm256_add_pd(z, b0);
  num = _mm256_fmadd_pd(num, z, a1);
  den = _mm256_fmadd_pd(den, z, b1);
  num = _mm256_fmadd_pd(num, z, a2);
  den = _mm256_fmadd_pd(den, z, b2);
  __m256d erf_small =
      _mm256_div_pd(_mm256_mul_pd(y, _mm256_fmadd_pd(num, z, a3)),
                    _mm256_fmadd_pd(den, z, b3));
  __m256d erfc_a = _mm256_sub_pd(one, erf_small);

  // shared split exp(-y^2) = exp(-ysq^2) * exp(-del), ysq = trunc(16y)/16
  __m256d ysq = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(16.0)),
                                _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  ysq = _mm256_mul_pd(ysq, _mm256_set1_pd(0.0625));
  __m256d del = _mm256_mul_pd(_mm256_sub_pd(y, ysq), _mm256_add_pd(y, ysq));
  __m256d expmy2 = _mm256_mul_pd(
      vexp(_mm256_mul_pd(_mm256_mul_pd(ysq, ysq), _mm256_set1_pd(-1.0))),
      vexp(_mm256_mul_pd(del, _mm256_set1_pd(-1.0))));

  // --- branch B: 0.46875 < y <= 4, erfc(y) = exp(-y^2) * R2(y)
  const __m256d c0 = _mm256_set1_pd(5.64188496988670089e-1);
  const __m256d c1 = _mm256_set1_pd(8.88314979438837594e0);
  const __m256d c2 = _mm256_set1_pd(6.61191906371416295e1);
  const __m256d c3 = _mm256_set1_pd(2.98635138197400131e2);
  const __m256d c4 = _mm256_set1_pd(8.81952221241769090e2);
  const __m256d c5 = _mm256_set1_pd(1.71204761263407058e3);
  const __m256d c6 = _mm256_set1_pd(2.05107837782607147e3);
  const __m256d c7 = _mm256_set1_pd(1.23033935479799725e3);
  const __m256d c8 = _mm256_set1_pd(2.15311535474403846e-8);
  const __m256d d0 = _mm256_set1_pd(1.57449261107098347e1);
  const __m256d d1 = _mm256_set1_pd(1.17693950891312499e2);
  const __m256d d2 = _mm256_set1_pd(5.37181101862009858e2);
  const __m256d d3 = _mm256_set1_pd(1.62138957456669019e3);
  const __m256d d4 = _mm256_set1_pd(3.29079923573345963e3);
  const __m256d d5 = _mm256_set1_pd(4.36261909014324716e3);
  const __m256d d6 = _mm256_set1_pd(3.43936767414372164e3);
  const __m256d d7 = _mm256_set1_pd(1.23033935480374942e3);

  num = _mm256_fmadd_pd(c8, y, c0);
  den = _mm256_add_pd(y, d0);
  num = _mm256_fmadd_pd(num, y, c1);
  den = _mm256_fmadd_pd(den, y, d1);
  num = _mm256_fmadd_pd(num, y, c2);
  den = _mm256_fmadd_pd(den, y, d2);
  num = _mm256_fmadd_pd(num, y, c3);
  den = _mm256_fmadd_pd(den, y, d3);
  num = _mm256_fmadd_pd(num, y, c4);
  den = _mm256_fmadd_pd(den, y, d4);
  num = _mm256_fmadd_pd(num, y, c5);
  den = _mm256_fmadd_pd(den, y, d5);
  num = _mm256_fmadd_pd(num, y, c6);
  den = _mm256_fmadd_pd(den, y, d6);
  __m256d erfc_b = _mm256_mul_pd(
      expmy2, _mm256_div_pd(_mm256_fmadd_pd(num, y, c7),
                            _mm256_fmadd_pd(den, y, d7)));

  // --- branch C: y > 4, erfc(y) = exp(-y^2)/y * (1/sqrt(pi) - R3(1/y^2)/1)
  const __m256d p0c = _mm256_set1_pd(3.05326634961232344e-1);
  const __m256d p1c = _mm256_set1_pd(3.60344899949804439e-1);
  const __m256d p2c = _mm256_set1_pd(1.25781726111229246e-1);
  const __m256d p3c = _mm256_set1_pd(1.60837851487422766e-2);
  const __m256d p4c = _mm256_set1_pd(6.58749161529837803e-4);
  const __m256d p5c = _mm256_set1_pd(1.63153871373020978e-2);
  const __m256d q0c = _mm256_set1_pd(2.56852019228982242e0);
  const __m256d q1c = _mm256_set1_pd(1.87295284992346047e0);
  const __m256d q2c = _mm256_set1_pd(5.27905102951428412e-1);
  const __m256d q3c = _mm256_set1_pd(6.05183413124413191e-2);
  const __m256d q4c = _mm256_set1_pd(2.33520497626869185e-3);
  const __m256d inv_sqrtpi = _mm256_set1_pd(5.6418958354775628695e-1);

  // guard y = 0 lanes (inactive here) against 0/0
  __m256d ysafe = _mm256_max_pd(y, _mm256_set1_pd(1e-30));
  __m256d iz = _mm256_div_pd(one, _mm256_mul_pd(ysafe, ysafe));
  num = _mm256_fmadd_pd(p5c, iz, p0c);
  den = _mm256_add_pd(iz, q0c);
  num = _mm256_fmadd_pd(num, iz, p1c);
  den = _mm256_fmadd_pd(den, iz, q1c);
  num = _mm256_fmadd_pd(num, iz, p2c);
  den = _mm256_fmadd_pd(den, iz, q2c);
  num = _mm256_fmadd_pd(num, iz, p3c);
  den = _mm256_fmadd_pd(den, iz, q3c);
  __m256d rr = _mm256_mul_pd(
      iz, _mm256_div_pd(_mm256_fmadd_pd(num, iz, p4c),
                        _mm256_fmadd_pd(den, iz, q4c)));
  __m256d erfc_c = _mm256_mul_pd(
      expmy2, _mm256_div_pd(_mm256_sub_pd(inv_sqrtpi, rr), ysafe));

  __m256d in_a = _mm256_cmp_pd(y, _mm256_set1_pd(0.46875), _CMP_LE_OQ);
  __m256d in_b = _mm256_cmp_pd(y, _mm256_set1_pd(4.0), _CMP_LE_OQ);
  __m256d erfc_abs = _mm256_blendv_pd(erfc_c, erfc_b, in_b);
  erfc_abs = _mm256_blendv_pd(erfc_abs, erfc_a, in_a);

  // Phi(x) = 0.5 erfc(|t|) for x < 0, 1 - 0.5 erfc(|t|) otherwise
  __m256d halfe = _mm256_mul_pd(half, erfc_abs);
  return _mm256_blendv_pd(_mm256_sub_pd(one, halfe), halfe, sign_neg);
}

} // namespace deconv::batch::detail::avx2_math
