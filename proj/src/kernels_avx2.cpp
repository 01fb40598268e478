// AVX2/FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma and is only entered after a runtime CPU capability check,
// so the rest of the library can stay at the baseline ISA.
//
// Each kernel processes the bulk of the array in 4-wide vector steps and
// finishes the remainder with the same scalar arithmetic as the reference
// implementation.  Reductions reassociate, so results may differ from the
// scalar backend by rounding; the equivalence tests bound that difference.

#include "fnls/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace fnls::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swap));
}

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double v_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double v_sum_sq(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * a[i];
  return r;
}

double v_sum_abs(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(a + i), kAbsMask));
  double r = hsum(acc);
  for (; i < n; ++i) r += std::fabs(a[i]);
  return r;
}

double v_max_abs(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(a + i), kAbsMask));
  double r = hmax(acc);
  for (; i < n; ++i) r = std::max(r, std::fabs(a[i]));
  return r;
}

void v_axpby(double alpha, const double* x, double beta, double* y,
             std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    t = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), t);
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

void v_scal(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void v_vmul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void v_abs_val(const double* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_and_pd(_mm256_loadu_pd(a + i), kAbsMask));
  for (; i < n; ++i) out[i] = std::fabs(a[i]);
}

void v_clamp_min0(const double* a, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), zero));
  for (; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
}

void v_cmul_real(double* z, const double* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // duplicate (m0,m1) -> (m0,m0,m1,m1) to match interleaved complex
    __m128d mm = _mm_loadu_pd(m + i);
    __m256d md = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);
    _mm256_storeu_pd(z + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(z + 2 * i), md));
  }
  for (; i < n; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

double v_csum_sq_weighted(const double* z, const double* m, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m128d mm = _mm_loadu_pd(m + i);
    __m256d md = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);
    __m256d zz = _mm256_loadu_pd(z + 2 * i);
    acc = _mm256_fmadd_pd(md, _mm256_mul_pd(zz, zz), acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) {
    const double re = z[2 * i], im = z[2 * i + 1];
    r += m[i] * (re * re + im * im);
  }
  return r;
}

void v_horner_eval(const double* coef, std::size_t nmodes, const double* zre,
                   const double* zim, const double* wre, const double* wim,
                   double* out, std::size_t npts) {
  std::size_t j = 0;
  for (; j + 4 <= npts; j += 4) {
    const __m256d xr = _mm256_loadu_pd(zre + j);
    const __m256d xi = _mm256_loadu_pd(zim + j);
    __m256d sr = _mm256_set1_pd(coef[2 * (nmodes - 1)]);
    __m256d si = _mm256_set1_pd(coef[2 * (nmodes - 1) + 1]);
    for (std::size_t t = nmodes - 1; t-- > 0;) {
      const __m256d cr = _mm256_set1_pd(coef[2 * t]);
      const __m256d ci = _mm256_set1_pd(coef[2 * t + 1]);
      __m256d nr = _mm256_fmsub_pd(si, xi, cr);       // si*xi - cr
      nr = _mm256_fmsub_pd(sr, xr, nr);               // sr*xr - si*xi + cr
      __m256d ni = _mm256_fmadd_pd(si, xr, ci);       // si*xr + ci
      ni = _mm256_fmadd_pd(sr, xi, ni);               // sr*xi + si*xr + ci
      sr = nr;
      si = ni;
    }
    __m256d res = _mm256_mul_pd(_mm256_loadu_pd(wim + j), si);
    res = _mm256_fmsub_pd(_mm256_loadu_pd(wre + j), sr, res);
    _mm256_storeu_pd(out + j, res);
  }
  if (j < npts)
    scalar_ops.horner_eval(coef, nmodes, zre + j, zim + j, wre + j, wim + j,
                           out + j, npts - j);
}

}  // namespace

const Ops avx2_ops = {
    "avx2",      v_dot,       v_sum_sq,     v_sum_abs,
    v_max_abs,   v_axpby,     v_scal,       v_vmul,
    v_abs_val,   v_clamp_min0, v_cmul_real, v_csum_sq_weighted,
    v_horner_eval,
};

}  // namespace fnls::kernels

#endif  // __AVX2__ && __FMA__
