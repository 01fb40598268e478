#pragma once

//============================================================================
// functionals.hpp
//
// Energies and first-order quantities on the mass sphere:
//
//   F(u)        = 1/2 ||(-D)^{s/2} u||^2 - 1/p int a(x) |u|^p
//   F_inf(u)    = same with a == 1
//   F_lambda    = F - lambda/2 ||u||^2         (and the a == 1 variant)
//
//   gradient    F'(u) = (-D)^s u - a |u|^{p-2} u          (L^2 representative)
//   multiplier  lambda(u) = <F'(u), u> / ||u||^2
//   tangent residual     F'(u) - lambda(u) u
//   pohozaev_residual    s K(u) - d(p-2)/(2p) int a|u|^p + 1/p int W |u|^p
//
// The dilation fiber h -> F(h*u) is evaluated through the change of
// variables int a(x)|h*u|^p dx = e^{d(p-2)h/2} int a(e^{-h} xi) |u(xi)|^p dxi,
// which needs only pointwise closed-form evaluations of a and W at scaled
// coordinates - no resampling of u.  fiber_derivative(u,a,h) computed this
// way equals pohozaev_residual(fiber_scale(u,h), a); the two routes are the
// first-order consistency check of the whole geometry.
//============================================================================

#include <vector>

#include "fnls/field.hpp"
#include "fnls/params.hpp"
#include "fnls/potential.hpp"

namespace fnls {

struct EnergyBreakdown {
  double kinetic = 0.0;    // 1/2 ||(-D)^{s/2} u||^2
  double potential = 0.0;  // 1/p int a |u|^p
  double total = 0.0;      // kinetic - potential
};

EnergyBreakdown energy_F(const Field& u, const Potential& a,
                         const PhysParams& pp);
EnergyBreakdown energy_Finf(const Field& u, const PhysParams& pp);
double energy_Flambda(const Field& u, const Potential& a, const PhysParams& pp,
                      double lambda);
double energy_Finf_lambda(const Field& u, const PhysParams& pp, double lambda);

Field gradient_F(const Field& u, const Potential& a, const PhysParams& pp);

double multiplier(const Field& u, const Potential& a, const PhysParams& pp);

// r = F'(u) - lambda(u) u; <r, u> = 0 by construction.
Field tangent_residual(const Field& u, const Potential& a,
                       const PhysParams& pp, double* lambda_out = nullptr);

double pohozaev_residual(const Field& u, const Potential& a,
                         const PhysParams& pp);

double fiber_derivative(const Field& u, const Potential& a, double h,
                        const PhysParams& pp);

// Precomputed view of the fiber through u: K(u) and |u|^p are evaluated
// once, after which value/derivative at any h cost one sweep of closed-form
// potential evaluations.
class FiberProfile {
 public:
  FiberProfile(const Field& u, const Potential& a, const PhysParams& pp);

  double value(double h) const;             // F(h*u)
  double derivative(double h) const;        // d/dh F(h*u)
  double second_derivative(double h) const;

  double kinetic() const { return K_; }     // ||(-D)^{s/2} u||^2
  double lp_pow() const { return Pa0_1_; }  // int |u|^p

 private:
  struct Weighted {
    double Pa, PW, PV;  // int {a,W,x.gradW}(e^{-h} xi) |u|^p dxi
  };
  Weighted sums(double h) const;

  const Potential a_;
  PhysParams pp_;
  double K_ = 0.0;
  double sigma_ = 0.0;  // d(p-2)/2
  double Pa0_1_ = 0.0;  // int |u|^p (potential-free)
  std::vector<double> up_;   // |u(xi)|^p * cell
  std::vector<double> r2_;   // |xi|^2
};

// Offset variant used by the linking-box sampler: the fiber through the
// translate, F(h * (u(. - y))), i.e. a evaluated at e^{-h} (xi + y).
class OffsetFiberProfile {
 public:
  OffsetFiberProfile(const Field& u, const Potential& a, const PhysParams& pp);

  double value(const double* y, double h) const;

 private:
  const Potential a_;
  PhysParams pp_;
  int d_ = 1;
  double K_ = 0.0;
  double sigma_ = 0.0;
  std::vector<double> up_;  // |u|^p * cell
  std::vector<double> x0_, x1_;  // coordinates of each sample
};

}  // namespace fnls
