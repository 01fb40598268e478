#include "fnls/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fnls::kernels {

//----------------------------------------------------------------------------
// scalar reference implementations
//----------------------------------------------------------------------------

namespace {

double s_dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double s_sum_sq(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double s_sum_abs(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i]);
  return acc;
}

double s_max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void s_axpby(double alpha, const double* x, double beta, double* y,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

void s_scal(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void s_vmul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void s_abs_val(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]);
}

void s_clamp_min0(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
}

void s_cmul_real(double* z, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

double s_csum_sq_weighted(const double* z, const double* m, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[2 * i], im = z[2 * i + 1];
    acc += m[i] * (re * re + im * im);
  }
  return acc;
}

void s_horner_eval(const double* coef, std::size_t nmodes, const double* zre,
                   const double* zim, const double* wre, const double* wim,
                   double* out, std::size_t npts) {
  for (std::size_t j = 0; j < npts; ++j) {
    const double xr = zre[j], xi = zim[j];
    double sr = coef[2 * (nmodes - 1)];
    double si = coef[2 * (nmodes - 1) + 1];
    for (std::size_t t = nmodes - 1; t-- > 0;) {
      const double nr = sr * xr - si * xi + coef[2 * t];
      const double ni = sr * xi + si * xr + coef[2 * t + 1];
      sr = nr;
      si = ni;
    }
    out[j] = wre[j] * sr - wim[j] * si;
  }
}

}  // namespace

const Ops scalar_ops = {
    "scalar",     s_dot,       s_sum_sq,     s_sum_abs,
    s_max_abs,    s_axpby,     s_scal,       s_vmul,
    s_abs_val,    s_clamp_min0, s_cmul_real, s_csum_sq_weighted,
    s_horner_eval,
};

//----------------------------------------------------------------------------
// dispatch
//----------------------------------------------------------------------------

#if defined(FNLS_HAVE_AVX2_TU)
extern const Ops avx2_ops;  // defined in kernels_avx2.cpp
#endif

bool avx2_available() {
#if defined(FNLS_HAVE_AVX2_TU)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops* resolve_default() {
  if (const char* env = std::getenv("FNLS_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_ops;
#if defined(FNLS_HAVE_AVX2_TU)
    if (want == "avx2" && avx2_available()) return &avx2_ops;
#endif
    // Unknown or unsupported request: fall through to auto.
  }
#if defined(FNLS_HAVE_AVX2_TU)
  if (avx2_available()) return &avx2_ops;
#endif
  return &scalar_ops;
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& ops() {
  const Ops* p = g_active.load(std::memory_order_acquire);
  if (!p) {
    p = resolve_default();
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

void force_backend(std::string_view name) {
  if (name == "scalar") {
    g_active.store(&scalar_ops, std::memory_order_release);
    return;
  }
  if (name == "avx2") {
#if defined(FNLS_HAVE_AVX2_TU)
    if (avx2_available()) {
      g_active.store(&avx2_ops, std::memory_order_release);
      return;
    }
#endif
    throw std::runtime_error("kernel backend unavailable: avx2");
  }
  throw std::runtime_error("unknown kernel backend: " + std::string(name));
}

}  // namespace fnls::kernels
