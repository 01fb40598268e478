#include "fnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "fnls/kernels.hpp"

namespace fnls {

namespace {

//----------------------------------------------------------------------------
// FFTW wrapper, one instance per (d, n), created lazily and kept for the
// process lifetime.  Plans are FFTW_ESTIMATE (deterministic, cheap to build)
// and run on instance-owned buffers guarded by a mutex.
//----------------------------------------------------------------------------
class Transformer {
 public:
  Transformer(int d, int n) : d_(d), n_(n) {
    sz_ = d == 1 ? static_cast<std::size_t>(n)
                 : static_cast<std::size_t>(n) * n;
    in_ = fftw_alloc_complex(sz_);
    out_ = fftw_alloc_complex(sz_);
    if (!in_ || !out_) throw std::bad_alloc();
    if (d == 1) {
      fwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      fwd_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
  }

  ~Transformer() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }

  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;

  // out = DFT(in)/n^d
  void forward(const double* in, cplx* out) {
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < sz_; ++i) {
      in_[i][0] = in[i];
      in_[i][1] = 0.0;
    }
    fftw_execute(fwd_);
    const double scale = 1.0 / static_cast<double>(sz_);
    for (std::size_t i = 0; i < sz_; ++i)
      out[i] = cplx(out_[i][0] * scale, out_[i][1] * scale);
  }

  // out = sum_k spec_k e^{+i...}; returns the L2 of the imaginary residue
  // (quadrature-weighted) alongside the reference field norm.
  void backward(const cplx* spec, double* out, double cell, double boxvol,
                double* imag_l2, double* ref_l2) {
    std::lock_guard<std::mutex> lock(mu_);
    double specsq = 0.0;
    for (std::size_t i = 0; i < sz_; ++i) {
      in_[i][0] = spec[i].real();
      in_[i][1] = spec[i].imag();
      specsq += spec[i].real() * spec[i].real() +
                spec[i].imag() * spec[i].imag();
    }
    fftw_execute(bwd_);
    double imagsq = 0.0;
    for (std::size_t i = 0; i < sz_; ++i) {
      out[i] = out_[i][0];
      imagsq += out_[i][1] * out_[i][1];
    }
    *imag_l2 = std::sqrt(cell * imagsq);
    *ref_l2 = std::sqrt(boxvol * specsq);
  }

  static Transformer& get(const Grid& g) {
    static std::mutex reg_mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Transformer>> reg;
    std::lock_guard<std::mutex> lock(reg_mu);
    auto key = std::make_pair(g.d, g.n);
    auto it = reg.find(key);
    if (it == reg.end())
      it = reg.emplace(key, std::make_unique<Transformer>(g.d, g.n)).first;
    return *it->second;
  }

 private:
  int d_, n_;
  std::size_t sz_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan fwd_, bwd_;
  std::mutex mu_;
};

double boxvol(const Grid& g) {
  const double v = 2.0 * g.L;
  return g.d == 1 ? v : v * v;
}

void check_s(double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::invalid_argument("fractional order s must lie in (0,1]");
}

// |k|^2 at flat index i.
double ksq_at(const Grid& g, std::size_t i) {
  if (g.d == 1) {
    const double k = g.wavenumber(static_cast<int>(i));
    return k * k;
  }
  const int n = g.n;
  const double kx = g.wavenumber(static_cast<int>(i / n));
  const double ky = g.wavenumber(static_cast<int>(i % n));
  return kx * kx + ky * ky;
}

enum class MulKind { kFrac, kInvHelmholtz };

const std::vector<double>& multiplier_table(const Grid& g, double s,
                                            MulKind kind) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double, double, int>,
                  std::vector<double>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(g.d, g.n, g.L, s, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<double> m(g.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double k2 = ksq_at(g, i);
    // s == 1 must reproduce the plain spectral Laplacian bit-for-bit.
    const double frac = (s == 1.0) ? k2 : (k2 == 0.0 ? 0.0 : std::pow(k2, s));
    m[i] = kind == MulKind::kFrac ? frac : 1.0 / (1.0 + frac);
  }
  return cache.emplace(key, std::move(m)).first->second;
}

Field apply_multiplier(const Field& f, const std::vector<double>& m) {
  auto spec = fft(f);
  kernels::ops().cmul_real(reinterpret_cast<double*>(spec.data()), m.data(),
                           spec.size());
  return ifft(f.grid, spec);
}

}  // namespace

std::vector<cplx> fft(const Field& f) {
  if (f.v.size() != f.grid.size())
    throw std::invalid_argument("fft: field storage does not match its grid");
  std::vector<cplx> spec(f.size());
  Transformer::get(f.grid).forward(f.data(), spec.data());
  return spec;
}

Field ifft(const Grid& g, const std::vector<cplx>& spec) {
  if (spec.size() != g.size())
    throw std::invalid_argument("ifft: spectrum size does not match grid");
  Field out(g);
  double imag_l2 = 0.0, ref_l2 = 0.0;
  Transformer::get(g).backward(spec.data(), out.data(), g.cell(), boxvol(g),
                               &imag_l2, &ref_l2);
  if (imag_l2 > 1e-10 * ref_l2)
    throw std::runtime_error(
        "ifft: imaginary residue exceeds 1e-10 of the field norm "
        "(non-Hermitian spectrum)");
  return out;
}

const std::vector<double>& multiplier_frac(const Grid& g, double s) {
  check_s(s);
  return multiplier_table(g, s, MulKind::kFrac);
}

const std::vector<double>& multiplier_inv_helmholtz(const Grid& g, double s) {
  check_s(s);
  return multiplier_table(g, s, MulKind::kInvHelmholtz);
}

Field frac_laplacian(const Field& f, double s) {
  check_s(s);
  return apply_multiplier(f, multiplier_frac(f.grid, s));
}

Field helmholtz_inverse(const Field& f, double s) {
  check_s(s);
  return apply_multiplier(f, multiplier_inv_helmholtz(f.grid, s));
}

double gagliardo_energy(const Field& f, double s) {
  check_s(s);
  auto spec = fft(f);
  const auto& m = multiplier_frac(f.grid, s);
  const double sum = kernels::ops().csum_sq_weighted(
      reinterpret_cast<const double*>(spec.data()), m.data(), spec.size());
  return boxvol(f.grid) * sum;
}

double l2_inner(const Field& f, const Field& g) {
  require_same_grid(f, g, "l2_inner");
  return f.grid.cell() * kernels::ops().dot(f.data(), g.data(), f.size());
}

double l2_norm_sq(const Field& f) {
  return f.grid.cell() * kernels::ops().sum_sq(f.data(), f.size());
}

double l2_norm(const Field& f) { return std::sqrt(l2_norm_sq(f)); }

double lp_norm_pow(const Field& f, double q) {
  if (!(q >= 1.0))
    throw std::invalid_argument("lp_norm: exponent must be >= 1");
  if (q == 2.0) return l2_norm_sq(f);
  if (q == 1.0)
    return f.grid.cell() * kernels::ops().sum_abs(f.data(), f.size());
  double acc = 0.0;
  for (double x : f.v) acc += std::pow(std::fabs(x), q);
  return f.grid.cell() * acc;
}

double lp_norm(const Field& f, double q) {
  return std::pow(lp_norm_pow(f, q), 1.0 / q);
}

double weighted_residual_norm(const Field& r, double s) {
  check_s(s);
  auto spec = fft(r);
  const auto& m = multiplier_inv_helmholtz(r.grid, s);
  const double sum = kernels::ops().csum_sq_weighted(
      reinterpret_cast<const double*>(spec.data()), m.data(), spec.size());
  return std::sqrt(boxvol(r.grid) * sum);
}

Field signed_pow(const Field& u, double q) {
  if (!(q > 0.0))
    throw std::invalid_argument("signed_pow: exponent must be positive");
  Field out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i)
    out.v[i] = std::copysign(std::pow(std::fabs(u.v[i]), q), u.v[i]);
  return out;
}

Field abs_field(const Field& u) {
  Field out(u.grid);
  kernels::ops().abs_val(u.data(), out.data(), u.size());
  return out;
}

Field clamp0(const Field& u) {
  Field out(u.grid);
  kernels::ops().clamp_min0(u.data(), out.data(), u.size());
  return out;
}

}  // namespace fnls
