#include "fnls/boundstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnls/geometry.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral.hpp"
#include "fnls/threads.hpp"

namespace fnls {
namespace {

constexpr double kFiberTol = 1e-10;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void renormalize(Field& u, double c, const char* who) {
  const double n = l2_norm(u);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::runtime_error(std::string(who) + ": iterate lost its mass (norm " + num(n) + ")");
  }
  ops().scal(c / n, u.v.data(), u.v.size());
}

}  // namespace

double fiber_maximize(const FiberProfile& prof, double h_max) {
  if (!(h_max > 0.0)) throw std::invalid_argument("fiber_maximize: h_max must be positive");
  auto G = [&prof](double h) { return prof.derivative(h); };

  // Outward bracket: walk in the downhill direction of G until it changes
  // sign.  G > 0 left of the fiber maximum, G < 0 right of it.
  double a = 0.0, b = 0.0;
  double ga = G(0.0), gb = ga;
  if (ga == 0.0) return 0.0;
  const double step = 0.5;
  if (ga > 0.0) {
    b = step;
    gb = G(b);
    while (gb > 0.0) {
      a = b;
      ga = gb;
      b += step;
      if (b > h_max) {
        throw std::runtime_error("fiber_maximize: fiber derivative has no sign change for h in [0, " +
                                 num(h_max) + "] (fiber unbounded in window)");
      }
      gb = G(b);
    }
  } else {
    a = -step;
    ga = G(a);
    while (ga < 0.0) {
      b = a;
      gb = ga;
      a -= step;
      if (a < -h_max) {
        throw std::runtime_error("fiber_maximize: fiber derivative has no sign change for h in [-" +
                                 num(h_max) + ", 0] (fiber unbounded in window)");
      }
      ga = G(a);
    }
  }

  // Safeguarded Newton on G inside [a, b]: Newton step when it stays in the
  // bracket, bisection otherwise.
  double x = 0.5 * (a + b);
  for (int it = 0; it < 100; ++it) {
    const double g = G(x);
    if (std::abs(g) <= kFiberTol) {
      const double curv = prof.second_derivative(x);
      if (!(curv < 0.0)) {
        throw std::runtime_error("fiber_maximize: stationary point at h = " + num(x) +
                                 " is not a fiber maximum (curvature " + num(curv) + ")");
      }
      return x;
    }
    if (g > 0.0) {
      a = x;
    } else {
      b = x;
    }
    const double dg = prof.second_derivative(x);
    double xn = x - g / dg;
    if (!std::isfinite(xn) || xn <= a || xn >= b) xn = 0.5 * (a + b);
    x = xn;
  }
  throw std::runtime_error("fiber_maximize: Newton/bisection did not reach |dF/dh| <= 1e-10");
}

double fiber_maximize(const Field& u, const Potential& a, const PhysParams& pp,
                      double h_max) {
  FiberProfile prof(u, a, pp);
  return fiber_maximize(prof, h_max);
}

namespace {

// max_{|y| <= rmax} F(h * (wc(. - y))) sampled along one ray; the built-in
// potentials and the profile are radial, so the offset value depends on |y|
// only and one ray is exact up to the sampling density.
double offset_ray_max(const OffsetFiberProfile& offp, double h, double rmax,
                      int nr) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < nr; ++i) {
    const double y[2] = {rmax * i / (nr - 1), 0.0};
    best = std::max(best, offp.value(y, h));
  }
  return best;
}

double bisect_decreasing(const std::function<double(double)>& f, double lo,
                         double hi, double target, double htol) {
  // pre: f(lo) > target >= f(hi) with lo < hi along the walk direction.
  double a = lo, b = hi;
  while (std::abs(b - a) > htol) {
    const double m = 0.5 * (a + b);
    if (f(m) > target) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

LinkingBox choose_box(const ScaledState& st, const Potential& a,
                      const PhysParams& pp, double eps_frac,
                      const LinkingOptions& opts) {
  if (!(st.m_c > 0.0)) {
    throw std::runtime_error("choose_box: the family energy level m_c must be positive, got " +
                             num(st.m_c));
  }
  if (!(eps_frac > 0.0)) throw std::invalid_argument("choose_box: eps_frac must be positive");
  if (opts.n_radial < 2 || opts.n_h < 2) {
    throw std::invalid_argument("choose_box: sampling densities must be >= 2");
  }
  const double m_c = st.m_c;
  const double L = st.wc.grid.L;
  FiberProfile prof0(st.wc, a, pp);
  OffsetFiberProfile offp(st.wc, a, pp);

  // Deep cap h2: walk up the fiber until F drops through -m_c/2, refine the
  // crossing, then overshoot slightly so the cap sits strictly negative.
  const double deep = -0.5 * m_c;
  double h2 = 0.0;
  {
    double hb = 0.5;
    while (prof0.value(hb) > deep) {
      hb += 0.5;
      if (hb > opts.h_cap) {
        throw std::runtime_error("choose_box: F(h * wc) does not reach " + num(deep) +
                                 " for h <= " + num(opts.h_cap));
      }
    }
    const double cross = bisect_decreasing([&](double h) { return prof0.value(h); },
                                           hb - 0.5, hb, deep, 1e-3);
    h2 = cross + 0.1;
    if (!(prof0.value(h2) < 0.0)) h2 = hb;  // monotonicity hiccup: keep the certified point
  }

  // Shallow cap h1 < 0: the whole slab {h = h1} must sit below 0.9 m_c, with
  // the offset maximum probed out to probe_frac * L.
  const int n_probe = 33;
  const double r_probe = opts.probe_frac * L;
  auto slab_max = [&](double h) { return offset_ray_max(offp, h, r_probe, n_probe); };
  double h1 = 0.0;
  {
    const double target = 0.85 * m_c;
    double ha = -0.5;
    while (slab_max(ha) > target) {
      ha -= 0.5;
      if (ha < -opts.h_cap) {
        throw std::runtime_error("choose_box: slab maximum stays above " + num(target) +
                                 " down to h = " + num(-opts.h_cap));
      }
    }
    // Walking downward in h the slab max decreases; bisect on -h.
    const double cross = -bisect_decreasing([&](double t) { return slab_max(-t); },
                                            -(ha + 0.5), -ha, target, 1e-3);
    h1 = cross - 0.1;
    if (!(slab_max(h1) < 0.9 * m_c)) h1 = ha;
  }

  // Radius: grow until the side |y| = R stays below m_c (1 + eps_frac)
  // across [h1, h2].
  auto side_max_at = [&](double R) {
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < opts.n_h; ++j) {
      const double h = h1 + (h2 - h1) * j / (opts.n_h - 1);
      const double y[2] = {R, 0.0};
      best = std::max(best, offp.value(y, h));
    }
    return best;
  };
  double R = opts.R0;
  double side = side_max_at(R);
  while (side >= m_c * (1.0 + eps_frac)) {
    R *= opts.growth;
    if (R > opts.probe_frac * L) {
      throw std::runtime_error(
          "choose_box: radius " + num(R) + " exceeds " + num(opts.probe_frac) +
          " * L = " + num(opts.probe_frac * L) +
          "; the potential decays too slowly for this box -- enlarge the grid");
    }
    side = side_max_at(R);
  }

  LinkingBox box;
  box.R = R;
  box.h1 = h1;
  box.h2 = h2;
  box.n_radial = opts.n_radial;
  box.n_h = opts.n_h;
  box.side_max = side;
  box.cap1_max = offset_ray_max(offp, h1, R, opts.n_radial);
  box.cap2_max = offset_ray_max(offp, h2, R, opts.n_radial);
  box.boundary_max = std::max({box.side_max, box.cap1_max, box.cap2_max});
  return box;
}

FamilyMaxResult family_max(const LinkingBox& box, const ScaledState& st,
                           const Potential& a, const PhysParams& pp) {
  if (!(box.R > 0.0) || !(box.h1 < 0.0) || !(box.h2 > 0.0)) {
    throw std::invalid_argument("family_max: malformed linking box");
  }
  OffsetFiberProfile offp(st.wc, a, pp);
  const int nr = box.n_radial, nh = box.n_h;
  const std::size_t nodes = static_cast<std::size_t>(nr) * nh;

  std::vector<double> vals(nodes);
  parallel_for(nodes, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int i = static_cast<int>(idx) / nh;
      const int j = static_cast<int>(idx) % nh;
      const double y[2] = {box.R * i / (nr - 1), 0.0};
      const double h = box.h1 + (box.h2 - box.h1) * j / (nh - 1);
      vals[idx] = offp.value(y, h);
    }
  });

  FamilyMaxResult res;
  res.value = -std::numeric_limits<double>::infinity();
  res.boundary_max = -std::numeric_limits<double>::infinity();
  double interior_best = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < nodes; ++idx) {
    const int i = static_cast<int>(idx) / nh;
    const int j = static_cast<int>(idx) % nh;
    const bool boundary = (i == nr - 1) || (j == 0) || (j == nh - 1);
    if (vals[idx] > res.value) {
      res.value = vals[idx];
      res.y = box.R * i / (nr - 1);
      res.h = box.h1 + (box.h2 - box.h1) * j / (nh - 1);
    }
    if (boundary) {
      res.boundary_max = std::max(res.boundary_max, vals[idx]);
    } else {
      interior_best = std::max(interior_best, vals[idx]);
    }
  }
  if (interior_best < res.boundary_max) {
    throw std::runtime_error(
        "family_max: sampled interior maximum " + num(interior_best) +
        " lies below the boundary maximum " + num(res.boundary_max) +
        " -- linking box rejected");
  }
  return res;
}

BoundStateSolution saddle_solve(const Field& u0, const Potential& a,
                                const PhysParams& pp,
                                const SaddleOptions& opts) {
  if (!(opts.tol_grad > 0.0) || !(opts.tol_pohozaev > 0.0)) {
    throw std::invalid_argument("saddle_solve: tolerances must be positive");
  }
  if (opts.max_iter < 1) throw std::invalid_argument("saddle_solve: max_iter must be >= 1");
  require_finite(u0, "saddle_solve seed");

  const double c = l2_norm(u0);
  if (!(c > 0.0)) throw std::invalid_argument("saddle_solve: seed has zero mass");

  Field u = u0;
  renormalize(u, c, "saddle_solve");  // exact sphere membership from step one

  const double lam0 = multiplier(u, a, pp);
  const double tau0 = 0.1 / (1.0 + std::abs(lam0));
  const double tau_cap = 1e3 * tau0;
  double tau_prev = tau0;

  BoundStateSolution sol;
  sol.c = c;
  sol.m_c = opts.m_c;
  sol.delta0 = opts.delta0;

  Field v = u;
  double lambda = lam0, wres = 0.0, poho = 0.0, phi_red = 0.0;
  bool converged = false;

  for (int it = 1; it <= opts.max_iter; ++it) {
    FiberProfile prof(u, a, pp);
    const double hstar = fiber_maximize(prof, opts.h_max);
    phi_red = prof.value(hstar);

    v = (std::abs(hstar) < 1e-14) ? u : fiber_scale(u, hstar, opts.h_max);
    renormalize(v, c, "saddle_solve");

    Field r = tangent_residual(v, a, pp, &lambda);
    wres = weighted_residual_norm(r, pp.s);
    poho = pohozaev_residual(v, a, pp);
    const double K2 = gagliardo_energy(v, pp.s);

    sol.trajectory.push_back({it, phi_red, wres, poho, lambda});
    sol.iterations = it;

    if (wres <= opts.tol_grad * c &&
        std::abs(poho) <= opts.tol_pohozaev * pp.s * K2) {
      converged = true;
      break;
    }

    // Preconditioned tangential descent direction at the fiber top.
    Field z = helmholtz_inverse(r, pp.s);
    Field zt = z;
    const double proj = l2_inner(z, v) / (c * c);
    ops().axpby(-proj, v.v.data(), 1.0, zt.v.data(), zt.v.size());
    double slope = l2_inner(r, zt);
    if (!(slope > 0.0)) slope = 0.0;  // degenerate direction: noise floor only

    const double noise_floor = 1e-12 * (1.0 + std::abs(phi_red));
    double tau = std::min(2.0 * tau_prev, tau_cap);
    bool accepted = false;
    while (!accepted) {
      Field trial = v;
      ops().axpby(-tau, zt.v.data(), 1.0, trial.v.data(), trial.v.size());
      if (opts.enforce_nonneg) trial = abs_field(trial);
      renormalize(trial, c, "saddle_solve");
      bool ok = false;
      double phi_t = 0.0;
      try {
        FiberProfile tprof(trial, a, pp);
        const double ht = fiber_maximize(tprof, opts.h_max);
        phi_t = tprof.value(ht);
        ok = true;
      } catch (const std::exception&) {
        ok = false;  // wild step left the admissible fiber window: shrink
      }
      if (ok && (phi_t <= phi_red - 1e-4 * tau * slope ||
                 phi_t <= phi_red + noise_floor)) {
        u = std::move(trial);
        tau_prev = tau;
        accepted = true;
      } else {
        tau *= 0.5;
        if (tau < 1e-12) {
          throw std::runtime_error(
              "saddle_solve: Armijo step collapsed below 1e-12 at iteration " +
              std::to_string(it) + " (weighted residual " + num(wres) + ")");
        }
      }
    }
  }

  if (!converged) {
    throw std::runtime_error(
        "saddle_solve: no convergence in " + std::to_string(opts.max_iter) +
        " iterations (weighted residual " + num(wres) + ", target " +
        num(opts.tol_grad * c) + ")");
  }

  // The returned field is the fiber-top realization; floor the resampling
  // ringing at zero and re-measure everything on what the caller gets.
  if (opts.enforce_nonneg) {
    double mn = v.v[0];
    for (double x : v.v) mn = std::min(mn, x);
    if (mn < 0.0) {
      v = clamp0(v);
      renormalize(v, c, "saddle_solve");
    }
  }
  Field r = tangent_residual(v, a, pp, &lambda);
  wres = weighted_residual_norm(r, pp.s);
  poho = pohozaev_residual(v, a, pp);

  sol.u = std::move(v);
  sol.lambda = lambda;
  sol.energy = energy_F(sol.u, a, pp).total;
  sol.tangent_res = wres;
  sol.pohozaev_res = poho;

  if (!(lambda < 0.0)) {
    sol.window_violations.push_back("multiplier window: lambda = " + num(lambda) +
                                    " is not negative");
  }
  if (opts.delta0 > 0.0 && lambda <= -opts.delta0 / (c * c)) {
    sol.window_violations.push_back("multiplier window: lambda = " + num(lambda) +
                                    " is not above -delta0/c^2 = " +
                                    num(-opts.delta0 / (c * c)));
  }
  if (opts.m_c > 0.0) {
    if (!(sol.energy > opts.m_c)) {
      sol.window_violations.push_back("energy window: F(u) = " + num(sol.energy) +
                                      " is not above m_c = " + num(opts.m_c));
    }
    if (!(sol.energy < 2.0 * opts.m_c)) {
      sol.window_violations.push_back("energy window: F(u) = " + num(sol.energy) +
                                      " is not below 2 m_c = " + num(2.0 * opts.m_c));
    }
  }
  if (opts.family_max_value != 0.0 &&
      sol.energy > opts.family_max_value + 1e-6 * std::abs(opts.family_max_value)) {
    sol.window_violations.push_back(
        "level window: F(u) = " + num(sol.energy) +
        " exceeds the sampled family maximum " + num(opts.family_max_value));
  }
  if (opts.boundary_max != 0.0 && !(sol.energy > opts.boundary_max)) {
    sol.window_violations.push_back(
        "level window: F(u) = " + num(sol.energy) +
        " is not above the sampled boundary maximum " + num(opts.boundary_max));
  }
  try {
    sol.barycenter = barycenter(sol.u);
  } catch (const std::exception& e) {
    sol.window_violations.push_back(std::string("barycenter undefined: ") + e.what());
  }
  return sol;
}

SolutionCheck verify_solution(const BoundStateSolution& sol, const Potential& a,
                              const PhysParams& pp) {
  require_finite(sol.u, "verify_solution");
  SolutionCheck chk;
  chk.mass = l2_norm(sol.u);
  chk.mass_err = std::abs(chk.mass - sol.c);

  chk.lambda_recomputed = multiplier(sol.u, a, pp);
  chk.lambda_diff = std::abs(chk.lambda_recomputed - sol.lambda);

  Field r = tangent_residual(sol.u, a, pp);
  chk.tangent_res = weighted_residual_norm(r, pp.s);
  chk.tangent_diff = std::abs(chk.tangent_res - sol.tangent_res);

  // Full Euler-Lagrange residual with the *stored* multiplier.
  Field g = gradient_F(sol.u, a, pp);
  ops().axpby(-sol.lambda, sol.u.v.data(), 1.0, g.v.data(), g.v.size());
  chk.el_res_l2 = l2_norm(g);
  chk.el_res_weighted = weighted_residual_norm(g, pp.s);

  chk.pohozaev = pohozaev_residual(sol.u, a, pp);
  chk.pohozaev_diff = std::abs(chk.pohozaev - sol.pohozaev_res);

  auto within = [](double diff, double ref) {
    return diff <= 1e-10 * std::max(1.0, std::abs(ref));
  };
  chk.consistent = within(chk.mass_err, sol.c) &&
                   within(chk.lambda_diff, sol.lambda) &&
                   within(chk.tangent_diff, sol.tangent_res) &&
                   within(chk.pohozaev_diff, sol.pohozaev_res);
  if (!chk.consistent) {
    throw std::runtime_error(
        "verify_solution: stored values do not reproduce (mass err " + num(chk.mass_err) +
        ", lambda diff " + num(chk.lambda_diff) + ", tangent diff " + num(chk.tangent_diff) +
        ", pohozaev diff " + num(chk.pohozaev_diff) + ") -- solution corrupted");
  }
  return chk;
}

}  // namespace fnls
