#ifdef ADAPTIK_HAVE_AVX2

#include <immintrin.h>

#include <cstddef>

#include "adaptik/simd/vec_ops.hpp"

namespace adaptik::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void dot3_avx2(const double* x, const double* y, std::size_t n, double& xx,
               double& yy, double& xy) {
  __m256d axx = _mm256_setzero_pd();
  __m256d ayy = _mm256_setzero_pd();
  __m256d axy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    axx = _mm256_fmadd_pd(xv, xv, axx);
    ayy = _mm256_fmadd_pd(yv, yv, ayy);
    axy = _mm256_fmadd_pd(xv, yv, axy);
  }
  double sxx = hsum(axx), syy = hsum(ayy), sxy = hsum(axy);
  for (; i < n; ++i) {
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  xx = sxx;
  yy = syy;
  xy = sxy;
}

void rotate_pair_avx2(double* x, double* y, std::size_t n, double c, double s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(cv, xv, _mm256_mul_pd(sv, yv)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(sv, xv, _mm256_mul_pd(cv, yv)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

// 2^k for integer k in the normal exponent range [-1022, 1023].
inline __m256d pow2i(__m256i k) {
  const __m256i bias = _mm256_set1_epi64x(1023);
  return _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(k, bias), 52));
}

// exp on 4 lanes. Cody-Waite range reduction x = k*ln2 + r with |r| <= ln2/2,
// degree-13 Taylor for e^r, then scaling by 2^k split into two halves so that
// gradual underflow and overflow fall out of the final multiplies. Inputs are
// clamped to +-1000; the true thresholds (~709.8 for overflow, ~-745.2 for
// underflow to zero) lie well inside the clamp. Matches std::exp to a few ulp
// (checked in the lane-equivalence tests).
inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  x = _mm256_max_pd(_mm256_set1_pd(-1000.0), _mm256_min_pd(x, _mm256_set1_pd(1000.0)));

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  // Horner over Taylor coefficients 1/13! ... 1/0!.
  __m256d p = _mm256_set1_pd(1.6059043836821614599e-10);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.0876756987868098979e-09));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.5052108385441718775e-08));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985890653e-07));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985888276e-06));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.4801587301587301566e-05));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.9841269841269841253e-04));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.3888888888888889419e-03));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.3333333333333332177e-03));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.1666666666666664354e-02));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.6666666666666665741e-01));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(5.0e-01));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // k as int64 via the 1.5*2^52 shifter; |k| <= 1443 so the trick is exact.
  const __m256d shifter = _mm256_set1_pd(6755399441055744.0);
  const __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, shifter)),
                                      _mm256_castpd_si256(shifter));

  // Split k = k1 + k2 with both halves in [-1022, 1023]. AVX2 has no 64-bit
  // arithmetic shift, so halve (k + 2048) >= 0 logically and re-center.
  const __m256i kb = _mm256_add_epi64(ki, _mm256_set1_epi64x(2048));
  const __m256i k1 = _mm256_sub_epi64(_mm256_srli_epi64(kb, 1), _mm256_set1_epi64x(1024));
  const __m256i k2 = _mm256_sub_epi64(ki, k1);
  return _mm256_mul_pd(_mm256_mul_pd(p, pow2i(k1)), pow2i(k2));
}

void exp_scale_avx2(const double* x, double* dst, std::size_t n, double a,
                    double c) {
  const __m256d av = _mm256_set1_pd(a);
  const __m256d cv = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = exp4(_mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(cv, e));
  }
  if (i < n) {
    double pad_in[4] = {0.0, 0.0, 0.0, 0.0};
    double pad_out[4];
    for (std::size_t j = i; j < n; ++j) pad_in[j - i] = x[j];
    const __m256d e = exp4(_mm256_mul_pd(av, _mm256_loadu_pd(pad_in)));
    _mm256_storeu_pd(pad_out, _mm256_mul_pd(cv, e));
    for (std::size_t j = i; j < n; ++j) dst[j] = pad_out[j - i];
  }
}

}  // namespace

const VecOps& avx2_ops() {
  static const VecOps ops = {
      "avx2",    dot_avx2,  dot3_avx2, rotate_pair_avx2,
      axpy_avx2, scale_avx2, sum_avx2, exp_scale_avx2,
  };
  return ops;
}

}  // namespace adaptik::simd

#endif  // ADAPTIK_HAVE_AVX2
