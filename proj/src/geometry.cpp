#include "fnls/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fnls/kernels.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

namespace {

constexpr double kPi = std::numbers::pi;

//----------------------------------------------------------------------------
// One-axis band-limited resampling.
//
// A length-n line of samples determines the interpolant
//   u(y) = sum_{m = -n/2}^{n/2-1} d_m e^{i m phi(y)},  phi(y) = pi (y+L)/L,
// where d_m are the (1/n-normalized) DFT coefficients.  We evaluate it at
// the dilated nodes y_j = scale * x_j with a Horner recurrence in
// z_j = e^{i phi(y_j)} and keep the real part; the imaginary residue is
// accumulated and checked by the caller (it is roundoff-small for smooth
// data and only becomes visible for non-bandlimited input).
//----------------------------------------------------------------------------
struct AxisResampler {
  int n;
  double L;
  std::vector<double> zre, zim;  // z_j on the unit circle
  std::vector<double> wre, wim;  // e^{-i (n/2) phi_j}
  std::vector<cplx> line, spec;
  std::vector<double> coef;  // shifted spectrum, interleaved, mode t-n/2
  Grid axis_grid;

  AxisResampler(const Grid& g, double scale) : n(g.n), L(g.L) {
    axis_grid = make_grid(1, g.n, g.L);
    zre.resize(n);
    zim.resize(n);
    wre.resize(n);
    wim.resize(n);
    for (int j = 0; j < n; ++j) {
      const double y = scale * axis_grid.coord(j);
      // long double keeps the large phase (n/2)*phi accurate
      const long double phi =
          kPi * (static_cast<long double>(y) + L) / static_cast<long double>(L);
      zre[j] = static_cast<double>(cosl(phi));
      zim[j] = static_cast<double>(sinl(phi));
      const long double whole = -phi * (n / 2);
      const long double wr = fmodl(whole, 2.0L * kPi);
      wre[j] = static_cast<double>(cosl(wr));
      wim[j] = static_cast<double>(sinl(wr));
    }
    line.resize(n);
    spec.resize(n);
    coef.resize(2 * n);
  }

  // in/out may alias different strides within a larger array.
  // Returns the squared imaginary residue of this line (sample-summed).
  double resample_line(const double* in, std::ptrdiff_t in_stride, double* out,
                       std::ptrdiff_t out_stride) {
    Field tmp(axis_grid);
    for (int i = 0; i < n; ++i) tmp.v[i] = in[i * in_stride];
    auto sp = fft(tmp);
    // reorder to ascending signed mode t - n/2
    for (int t = 0; t < n; ++t) {
      const int m = (t - n / 2 + n) % n;
      coef[2 * t] = sp[m].real();
      coef[2 * t + 1] = sp[m].imag();
    }
    std::vector<double> re(n);
    kernels::ops().horner_eval(coef.data(), n, zre.data(), zim.data(),
                               wre.data(), wim.data(), re.data(), n);
    // imaginary part: same Horner with w rotated by -i, i.e.
    // Im(w S) = Re((-i w) S) -> reuse kernel with (wim, -wre).
    std::vector<double> im(n), wre2(n), wim2(n);
    for (int j = 0; j < n; ++j) {
      wre2[j] = wim[j];
      wim2[j] = -wre[j];
    }
    kernels::ops().horner_eval(coef.data(), n, zre.data(), zim.data(),
                               wre2.data(), wim2.data(), im.data(), n);
    double imagsq = 0.0;
    for (int j = 0; j < n; ++j) {
      out[j * out_stride] = re[j];
      imagsq += im[j] * im[j];
    }
    return imagsq;
  }
};

void check_imag(double imagsq, double refsq, double cell, const char* where) {
  const double imag_l2 = std::sqrt(cell * imagsq);
  const double ref_l2 = std::sqrt(cell * refsq);
  if (imag_l2 > 1e-10 * ref_l2)
    throw std::runtime_error(std::string(where) +
                             ": imaginary residue exceeds 1e-10 of the field "
                             "norm (input not band-limited)");
}

}  // namespace

Field fiber_scale(const Field& f, double h, double h_max) {
  require_finite(f, "fiber_scale");
  if (!(std::fabs(h) <= h_max))
    throw std::invalid_argument("fiber_scale: |h| exceeds the window h_max");

  const Grid& g = f.grid;
  const double scale = std::exp(h);

  // Aliasing guard: mass of f outside the sub-box of half-width e^{-|h|} L
  // is what dilation wraps around the period; demand it be negligible.
  {
    const double r = std::exp(-std::fabs(h)) * g.L;
    double outside = 0.0, total = 0.0;
    double x[2];
    for (std::size_t i = 0; i < f.size(); ++i) {
      g.point(i, x);
      const double sq = f.v[i] * f.v[i];
      total += sq;
      const double linf =
          g.d == 1 ? std::fabs(x[0]) : std::max(std::fabs(x[0]), std::fabs(x[1]));
      if (linf > r) outside += sq;
    }
    if (outside > 1e-6 * total)
      throw std::runtime_error(
          "fiber_scale: dilation would push significant mass outside the box "
          "(aliasing); use a larger grid or smaller |h|");
  }

  Field out = f;
  const double refsq = kernels::ops().sum_sq(f.data(), f.size());

  AxisResampler rs(g, scale);
  double imagsq = 0.0;
  if (g.d == 1) {
    imagsq += rs.resample_line(f.data(), 1, out.data(), 1);
  } else {
    const int n = g.n;
    // axis 1 (contiguous rows)
    Field mid(g);
    for (int r = 0; r < n; ++r)
      imagsq += rs.resample_line(f.data() + static_cast<std::size_t>(r) * n, 1,
                                 mid.data() + static_cast<std::size_t>(r) * n, 1);
    check_imag(imagsq, refsq, g.cell(), "fiber_scale");
    // axis 0 (stride n)
    imagsq = 0.0;
    for (int c = 0; c < n; ++c)
      imagsq += rs.resample_line(mid.data() + c, n, out.data() + c, n);
  }
  check_imag(imagsq, refsq, g.cell(), "fiber_scale");

  const double amp = std::exp(0.5 * g.d * h);
  kernels::ops().scal(amp, out.data(), out.size());
  return out;
}

Field translate(const Field& f, const double* z) {
  require_finite(f, "translate");
  const Grid& g = f.grid;
  auto spec = fft(f);
  if (g.d == 1) {
    for (int i = 0; i < g.n; ++i) {
      const double th = -g.wavenumber(i) * z[0];
      spec[i] *= cplx(std::cos(th), std::sin(th));
    }
  } else {
    std::vector<cplx> ph0(g.n), ph1(g.n);
    for (int i = 0; i < g.n; ++i) {
      const double t0 = -g.wavenumber(i) * z[0];
      const double t1 = -g.wavenumber(i) * z[1];
      ph0[i] = cplx(std::cos(t0), std::sin(t0));
      ph1[i] = cplx(std::cos(t1), std::sin(t1));
    }
    for (int r = 0; r < g.n; ++r)
      for (int c = 0; c < g.n; ++c)
        spec[static_cast<std::size_t>(r) * g.n + c] *= ph0[r] * ph1[c];
  }
  return ifft(g, spec);
}

Field local_average(const Field& f) {
  const Grid& g = f.grid;
  if (!(g.h < 1.0))
    throw std::invalid_argument(
        "local_average: grid spacing must be below the averaging radius 1");

  // Sampled indicator of the unit ball, discretely normalized so that the
  // average of a constant is that constant exactly.
  Field w(g);
  double x[2];
  double wsum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    g.point(i, x);
    const double r2 = g.d == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    if (r2 <= 1.0) {
      w.v[i] = 1.0;
      wsum += 1.0;
    }
  }
  for (auto& v : w.v) v /= wsum;

  auto fa = fft(abs_field(f));
  auto wk = fft(w);
  const double nscale = static_cast<double>(g.size());
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= wk[i] * nscale;
  Field nu = ifft(g, fa);
  // convolution of nonnegative data; clip roundoff undershoot
  for (auto& v : nu.v)
    if (v < 0.0) v = 0.0;
  return nu;
}

std::vector<double> barycenter(const Field& f) {
  const Grid& g = f.grid;
  Field nu = local_average(f);
  const double numax = kernels::ops().max_abs(nu.data(), nu.size());
  if (numax <= 0.0)
    throw std::runtime_error("barycenter: undefined for an identically zero field");

  const double level = 0.5 * numax;
  const double shell = 0.9 * g.L;
  double m0 = 0.0;
  std::vector<double> m1(g.d, 0.0);
  double x[2];
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double t = nu.v[i] - level;
    if (t <= 0.0) continue;
    g.point(i, x);
    for (int ax = 0; ax < g.d; ++ax) {
      if (std::fabs(x[ax]) > shell)
        throw std::runtime_error(
            "barycenter: truncated bump touches the boundary shell; "
            "recenter the field or enlarge the box");
      m1[ax] += t * x[ax];
    }
    m0 += t;
  }
  if (m0 <= 0.0)
    throw std::runtime_error("barycenter: truncated bump has no mass");
  for (auto& v : m1) v /= m0;
  return m1;
}

Field realize(const FiberPoint& fp, double h_max) {
  return fiber_scale(fp.base, fp.h, h_max);
}

}  // namespace fnls
