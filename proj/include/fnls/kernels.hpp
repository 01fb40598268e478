#pragma once

//============================================================================
// kernels.hpp
//
// Data-parallel arithmetic kernels used by the spectral solver.  Every
// operation has a scalar reference implementation; on x86-64 an AVX2/FMA
// variant is compiled in a separate translation unit and selected at
// startup when the CPU supports it.  The active backend can be forced with
// the environment variable FNLS_SIMD=scalar|avx2 or programmatically with
// force_backend(), which is what the equivalence tests use.
//
// Complex arrays are interleaved (re,im) pairs, matching the FFTW layout.
//============================================================================

#include <cstddef>
#include <string_view>

namespace fnls::kernels {

struct Ops {
  const char* name;

  // reductions
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*sum_abs)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);

  // elementwise updates
  void (*axpby)(double alpha, const double* x, double beta, double* y,
                std::size_t n);                       // y = alpha*x + beta*y
  void (*scal)(double alpha, double* x, std::size_t n);
  void (*vmul)(const double* a, const double* b, double* out, std::size_t n);
  void (*abs_val)(const double* a, double* out, std::size_t n);
  void (*clamp_min0)(const double* a, double* out, std::size_t n);

  // interleaved-complex helpers
  void (*cmul_real)(double* z, const double* m, std::size_t n);  // z[i] *= m[i]
  double (*csum_sq_weighted)(const double* z, const double* m,
                             std::size_t n);          // sum m[i]*|z[i]|^2

  // Evaluate a trigonometric polynomial at unit-circle nodes by Horner:
  //   out[j] = Re( (wre[j]+i*wim[j]) * sum_{t=0}^{nmodes-1} c_t * z_j^t ),
  // c_t = coef[2t] + i*coef[2t+1],  z_j = zre[j] + i*zim[j].
  // Workhorse of band-limited resampling (fiber dilation).
  void (*horner_eval)(const double* coef, std::size_t nmodes,
                      const double* zre, const double* zim,
                      const double* wre, const double* wim,
                      double* out, std::size_t npts);
};

// Active backend (resolved once on first use).
const Ops& ops();

// Force a backend by name ("scalar", "avx2"); throws std::runtime_error if
// the requested backend is not available in this build/CPU.
void force_backend(std::string_view name);

bool avx2_available();

extern const Ops scalar_ops;

}  // namespace fnls::kernels
