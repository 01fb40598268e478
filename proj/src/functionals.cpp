#include "fnls/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/geometry.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

namespace {

// int a |u|^p with one fused sweep.
double weighted_lp_pow(const Field& u, const Potential& a,
                       const PhysParams& pp) {
  const Grid& g = u.grid;
  double acc = 0.0;
  double x[2];
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.point(i, x);
    const double r2 = g.d == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    acc += a.a_radial(r2) * std::pow(std::fabs(u.v[i]), pp.p);
  }
  return g.cell() * acc;
}

double weighted_W_lp_pow(const Field& u, const Potential& a,
                         const PhysParams& pp) {
  const Grid& g = u.grid;
  double acc = 0.0;
  double x[2];
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.point(i, x);
    const double r2 = g.d == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    acc += a.W_radial(r2) * std::pow(std::fabs(u.v[i]), pp.p);
  }
  return g.cell() * acc;
}

}  // namespace

EnergyBreakdown energy_F(const Field& u, const Potential& a,
                         const PhysParams& pp) {
  pp.validate();
  EnergyBreakdown e;
  e.kinetic = 0.5 * gagliardo_energy(u, pp.s);
  e.potential = weighted_lp_pow(u, a, pp) / pp.p;
  e.total = e.kinetic - e.potential;
  return e;
}

EnergyBreakdown energy_Finf(const Field& u, const PhysParams& pp) {
  pp.validate();
  EnergyBreakdown e;
  e.kinetic = 0.5 * gagliardo_energy(u, pp.s);
  e.potential = lp_norm_pow(u, pp.p) / pp.p;
  e.total = e.kinetic - e.potential;
  return e;
}

double energy_Flambda(const Field& u, const Potential& a, const PhysParams& pp,
                      double lambda) {
  return energy_F(u, a, pp).total - 0.5 * lambda * l2_norm_sq(u);
}

double energy_Finf_lambda(const Field& u, const PhysParams& pp,
                          double lambda) {
  return energy_Finf(u, pp).total - 0.5 * lambda * l2_norm_sq(u);
}

Field gradient_F(const Field& u, const Potential& a, const PhysParams& pp) {
  pp.validate();
  Field grad = frac_laplacian(u, pp.s);
  const Grid& g = u.grid;
  double x[2];
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.point(i, x);
    const double r2 = g.d == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    const double nl = std::copysign(
        std::pow(std::fabs(u.v[i]), pp.p - 1.0), u.v[i]);
    grad.v[i] -= a.a_radial(r2) * nl;
  }
  return grad;
}

double multiplier(const Field& u, const Potential& a, const PhysParams& pp) {
  pp.validate();
  const double mass = l2_norm_sq(u);
  if (!(mass > 0.0))
    throw std::invalid_argument("multiplier: undefined for the zero field");
  // <F'(u), u> = K(u) - int a |u|^p
  const double K = gagliardo_energy(u, pp.s);
  return (K - weighted_lp_pow(u, a, pp)) / mass;
}

Field tangent_residual(const Field& u, const Potential& a,
                       const PhysParams& pp, double* lambda_out) {
  const double lam = multiplier(u, a, pp);
  Field r = gradient_F(u, a, pp);
  kernels::ops().axpby(-lam, u.data(), 1.0, r.data(), r.size());
  if (lambda_out) *lambda_out = lam;
  return r;
}

double pohozaev_residual(const Field& u, const Potential& a,
                         const PhysParams& pp) {
  pp.validate();
  const double K = gagliardo_energy(u, pp.s);
  const double Pa = weighted_lp_pow(u, a, pp);
  const double PW = weighted_W_lp_pow(u, a, pp);
  return pp.s * K - pp.d * (pp.p - 2.0) / (2.0 * pp.p) * Pa + PW / pp.p;
}

double fiber_derivative(const Field& u, const Potential& a, double h,
                        const PhysParams& pp) {
  return FiberProfile(u, a, pp).derivative(h);
}

//----------------------------------------------------------------------------
// FiberProfile
//----------------------------------------------------------------------------

FiberProfile::FiberProfile(const Field& u, const Potential& a,
                           const PhysParams& pp)
    : a_(a), pp_(pp) {
  pp_.validate();
  K_ = gagliardo_energy(u, pp.s);
  sigma_ = 0.5 * pp.d * (pp.p - 2.0);
  const Grid& g = u.grid;
  up_.resize(u.size());
  r2_.resize(u.size());
  double x[2];
  double p1 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.point(i, x);
    r2_[i] = g.d == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    up_[i] = std::pow(std::fabs(u.v[i]), pp.p) * g.cell();
    p1 += up_[i];
  }
  Pa0_1_ = p1;
}

FiberProfile::Weighted FiberProfile::sums(double h) const {
  const double shrink = std::exp(-2.0 * h);  // |e^{-h} xi|^2 = e^{-2h} |xi|^2
  Weighted w{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < up_.size(); ++i) {
    const double r2 = shrink * r2_[i];
    w.Pa += a_.a_radial(r2) * up_[i];
    w.PW += a_.W_radial(r2) * up_[i];
    w.PV += a_.xgrad_W_radial(r2) * up_[i];
  }
  return w;
}

double FiberProfile::value(double h) const {
  const auto w = sums(h);
  return 0.5 * std::exp(2.0 * pp_.s * h) * K_ -
         std::exp(sigma_ * h) * w.Pa / pp_.p;
}

double FiberProfile::derivative(double h) const {
  const auto w = sums(h);
  const double eh = std::exp(sigma_ * h);
  return pp_.s * std::exp(2.0 * pp_.s * h) * K_ -
         sigma_ / pp_.p * eh * w.Pa + eh * w.PW / pp_.p;
}

double FiberProfile::second_derivative(double h) const {
  const auto w = sums(h);
  const double eh = std::exp(sigma_ * h);
  return 2.0 * pp_.s * pp_.s * std::exp(2.0 * pp_.s * h) * K_ -
         sigma_ / pp_.p * eh * (sigma_ * w.Pa - w.PW) +
         eh * (sigma_ * w.PW - w.PV) / pp_.p;
}

//----------------------------------------------------------------------------
// OffsetFiberProfile
//----------------------------------------------------------------------------

OffsetFiberProfile::OffsetFiberProfile(const Field& u, const Potential& a,
                                       const PhysParams& pp)
    : a_(a), pp_(pp), d_(u.grid.d) {
  pp_.validate();
  K_ = gagliardo_energy(u, pp.s);
  sigma_ = 0.5 * pp.d * (pp.p - 2.0);
  const Grid& g = u.grid;
  up_.resize(u.size());
  x0_.resize(u.size());
  if (d_ == 2) x1_.resize(u.size());
  double x[2];
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.point(i, x);
    x0_[i] = x[0];
    if (d_ == 2) x1_[i] = x[1];
    up_[i] = std::pow(std::fabs(u.v[i]), pp.p) * g.cell();
  }
}

double OffsetFiberProfile::value(const double* y, double h) const {
  // F(h * (u(. - y))): the dilation acts on the translate, so the potential
  // is probed at e^{-h} (xi + y).
  const double sc = std::exp(-h);
  double Pa = 0.0;
  if (d_ == 1) {
    for (std::size_t i = 0; i < up_.size(); ++i) {
      const double t = sc * (x0_[i] + y[0]);
      Pa += a_.a_radial(t * t) * up_[i];
    }
  } else {
    for (std::size_t i = 0; i < up_.size(); ++i) {
      const double t0 = sc * (x0_[i] + y[0]);
      const double t1 = sc * (x1_[i] + y[1]);
      Pa += a_.a_radial(t0 * t0 + t1 * t1) * up_[i];
    }
  }
  return 0.5 * std::exp(2.0 * pp_.s * h) * K_ - std::exp(sigma_ * h) * Pa / pp_.p;
}

}  // namespace fnls
