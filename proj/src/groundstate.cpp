#include "fnls/groundstate.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnls/functionals.hpp"
#include "fnls/geometry.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral.hpp"

namespace fnls {
namespace {

// u_+^{p-1} pointwise, with the clamp applied before any power so the
// integer fast paths agree with the general branch on negative samples.
Field plus_power(const Field& u, double pm1) {
  Field out{u.grid, std::vector<double>(u.v.size())};
  const double* src = u.v.data();
  double* dst = out.v.data();
  const std::size_t n = u.v.size();
  if (pm1 == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = src[i] > 0.0 ? src[i] : 0.0;
      dst[i] = t * t;
    }
  } else if (pm1 == 3.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = src[i] > 0.0 ? src[i] : 0.0;
      dst[i] = t * t * t;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = src[i] > 0.0 ? src[i] : 0.0;
      dst[i] = t > 0.0 ? std::pow(t, pm1) : 0.0;
    }
  }
  return out;
}

Field gaussian_seed(const Grid& g, double width_frac) {
  const double sigma = width_frac * g.L;
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  Field u{g, std::vector<double>(g.size())};
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coord(i);
      u.v[i] = std::exp(-x * x * inv2s2);
    }
  } else {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double x0 = g.coord(i);
      for (std::size_t j = 0; j < g.n; ++j, ++idx) {
        const double x1 = g.coord(j);
        u.v[idx] = std::exp(-(x0 * x0 + x1 * x1) * inv2s2);
      }
    }
  }
  return u;
}

// || (1+|k|^{2s}) u_hat - nl_hat ||_2 on the box, via Parseval.
double spectral_residual(const Grid& g, const std::vector<cplx>& uh,
                         const std::vector<cplx>& nlh,
                         const std::vector<double>& frac) {
  double acc = 0.0;
  for (std::size_t k = 0; k < uh.size(); ++k) {
    const cplx r = (1.0 + frac[k]) * uh[k] - nlh[k];
    acc += std::norm(r);
  }
  return std::sqrt(g.box_volume() * acc);
}

}  // namespace

GroundState solve_limit_equation(const Grid& g, const PhysParams& pp,
                                 const PetvOptions& opts) {
  validate(pp, ParamRegime::kOracle);
  if (pp.d != g.d) throw std::invalid_argument("solve_limit_equation: params/grid dimension mismatch");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_limit_equation: tol must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("solve_limit_equation: max_iter must be >= 1");

  const double pm1 = pp.p - 1.0;
  const double rho = (pp.p - 1.0) / (pp.p - 2.0);
  const std::vector<double>& frac = multiplier_frac(g, pp.s);
  const std::vector<double>& invh = multiplier_inv_helmholtz(g, pp.s);
  const double boxvol = g.box_volume();
  const double cell = g.cell();

  Field u = opts.init ? *opts.init : gaussian_seed(g, opts.init_width_frac);
  if (opts.init) {
    require_same_grid(u, g, "solve_limit_equation warm start");
    require_finite(u, "solve_limit_equation warm start");
  }
  std::vector<cplx> uh = fft(u);

  const Ops& K = ops();
  double res = 0.0;
  double gamma = 1.0;
  int it = 0;
  bool converged = false;

  for (it = 1; it <= opts.max_iter; ++it) {
    Field nl = plus_power(u, pm1);
    std::vector<cplx> nlh = fft(nl);

    res = spectral_residual(g, uh, nlh, frac);
    const double unorm = l2_norm(u);
    if (!(std::isfinite(res) && std::isfinite(unorm)) || unorm == 0.0) {
      throw std::runtime_error("solve_limit_equation: iterate degenerated (zero or non-finite)");
    }
    // Converge to half the requested tolerance: the returned field is
    // floored at zero below, and its re-measured residual must still sit
    // under the full tolerance.
    if (res <= 0.5 * opts.tol * unorm) {
      converged = true;
      break;
    }

    // gamma = <u, (1+(-D)^s) u> / <u, u_+^{p-1}>, both sides as discrete
    // quadratures (the numerator spectrally, the denominator pointwise).
    double num = 0.0;
    for (std::size_t k = 0; k < uh.size(); ++k) num += (1.0 + frac[k]) * std::norm(uh[k]);
    num *= boxvol;
    const double den = cell * K.dot(u.v.data(), nl.v.data(), u.v.size());
    gamma = num / den;
    if (!std::isfinite(gamma) || gamma < 1e-6 || gamma > 1e6) {
      throw std::runtime_error(
          "solve_limit_equation: iteration collapsed or blew up (gamma = " +
          std::to_string(gamma) + " at iteration " + std::to_string(it) + ")");
    }

    const double gr = std::pow(gamma, rho);
    for (std::size_t k = 0; k < uh.size(); ++k) uh[k] = gr * invh[k] * nlh[k];
    u = ifft(g, uh);
  }
  if (!converged) {
    throw std::runtime_error(
        "solve_limit_equation: no convergence in " + std::to_string(opts.max_iter) +
        " iterations (residual " + std::to_string(res) + ")");
  }

  // The converged profile is positive up to truncation ripple; floor it at
  // zero and re-measure the residual on the returned field so the reported
  // number belongs to what the caller gets.
  Field w = clamp0(u);
  {
    std::vector<cplx> wh = fft(w);
    Field nl = plus_power(w, pm1);
    std::vector<cplx> nlh = fft(nl);
    res = spectral_residual(g, wh, nlh, frac);
  }
  if (res > opts.tol * l2_norm(w)) {
    throw std::runtime_error("solve_limit_equation: positivity floor broke the residual bound");
  }

  GroundState gs;
  gs.w = std::move(w);
  gs.params = pp;
  gs.c0 = l2_norm(gs.w);
  gs.m_c0 = energy_Finf(gs.w, pp).total;
  gs.residual = res;
  gs.iterations = it;
  gs.gamma_final = gamma;
  return gs;
}

double theta(const PhysParams& pp) {
  const double d = static_cast<double>(pp.d);
  const double den = d * (pp.p - 2.0) - 4.0 * pp.s;
  if (den <= 1e-12) {
    throw std::runtime_error(
        "theta: d(p-2) - 4s = " + std::to_string(den) +
        " is not positive (p is not mass-supercritical)");
  }
  const double num = 4.0 * d - 2.0 * pp.p * (d - 2.0 * pp.s);
  const double th = num / den;
  if (!(th > 0.0)) {
    throw std::runtime_error("theta: nonpositive value (p at or beyond the Sobolev-critical exponent)");
  }
  return th;
}

double lambda_c(double c, double c0, double theta) {
  if (!(c > 0.0) || !(c0 > 0.0)) {
    throw std::invalid_argument("lambda_c: masses must be positive");
  }
  return -std::pow(c / c0, -theta - 2.0);
}

namespace {

ScaledState finish_scaled(Field wc, double c, double lc, double th,
                          const PhysParams& pp, const char* route,
                          double mass_rtol) {
  ScaledState st;
  st.m_c = energy_Finf(wc, pp).total;
  st.wc = std::move(wc);
  st.c = c;
  st.lambda_c = lc;
  st.theta = th;
  const double got = l2_norm(st.wc);
  if (std::abs(got - c) > mass_rtol * c) {
    throw std::runtime_error(std::string(route) + ": rescaled mass " +
                             std::to_string(got) + " misses the target " +
                             std::to_string(c));
  }
  return st;
}

}  // namespace

ScaledState rescale_to_mass(const GroundState& gs, double c) {
  const PhysParams& pp = gs.params;
  const double th = theta(pp);
  const double lc = lambda_c(c, gs.c0, th);
  const double Lam = -lc;
  const double beta = std::pow(Lam, 1.0 / (2.0 * pp.s));
  const double alpha = std::pow(Lam, 1.0 / (pp.p - 2.0));
  if (!std::isfinite(beta) || beta < 1e-9 || beta > 1e9) {
    throw std::runtime_error("rescale_to_mass: dilation factor " + std::to_string(beta) +
                             " leaves the supported range [1e-9, 1e9]");
  }
  const Grid gc = make_grid(gs.w.grid.d, gs.w.grid.n, gs.w.grid.L / beta);
  Field wc{gc, gs.w.v};
  ops().scal(alpha, wc.v.data(), wc.v.size());
  return finish_scaled(std::move(wc), c, lc, th, pp, "rescale_to_mass", 1e-8);
}

ScaledState rescale_onto_grid(const GroundState& gs, double c) {
  const PhysParams& pp = gs.params;
  const double th = theta(pp);
  const double lc = lambda_c(c, gs.c0, th);
  const double Lam = -lc;
  const double beta = std::pow(Lam, 1.0 / (2.0 * pp.s));
  const double alpha = std::pow(Lam, 1.0 / (pp.p - 2.0));
  // fiber_scale evaluates the interpolant at e^h x with amplitude e^{dh/2};
  // rescaling to the family's amplitude alpha turns it into
  // alpha * w(beta x) on the source grid.
  const double h = std::log(beta);
  Field wc = fiber_scale(gs.w, h);
  const double amp = alpha / std::exp(0.5 * gs.w.grid.d * h);
  ops().scal(amp, wc.v.data(), wc.v.size());
  // Resampling error, not roundoff, dominates this route; the mass check is
  // correspondingly looser than the exact route's.
  return finish_scaled(std::move(wc), c, lc, th, pp, "rescale_onto_grid", 1e-6);
}

std::vector<CurveRow> mass_energy_curve(const GroundState& gs,
                                        const std::vector<double>& c_list) {
  std::vector<CurveRow> rows;
  rows.reserve(c_list.size());
  for (double c : c_list) {
    ScaledState st = rescale_to_mass(gs, c);
    rows.push_back({c, st.m_c, st.lambda_c});
  }
  return rows;
}

}  // namespace fnls
