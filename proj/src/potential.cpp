#include "fnls/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fnls/groundstate.hpp"

namespace fnls {

//----------------------------------------------------------------------------
// families
//----------------------------------------------------------------------------

Potential Potential::constant(double a0) {
  if (!(a0 > 0.0) || !std::isfinite(a0))
    throw std::invalid_argument("potential: constant level must be positive");
  Potential p;
  p.family_ = Family::kConstant;
  p.a0_ = a0;
  return p;
}

Potential Potential::inverse_power_well(double mu, double q) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument(
        "potential: well depth mu must lie in (0,1)");
  if (!(q > 0.0))
    throw std::invalid_argument("potential: well decay q must be positive");
  Potential p;
  p.family_ = Family::kInversePowerWell;
  p.mu_ = mu;
  p.q_ = q;
  return p;
}

std::string Potential::label() const {
  if (family_ == Family::kConstant)
    return "constant(a0=" + std::to_string(a0_) + ")";
  return "inverse_power_well(mu=" + std::to_string(mu_) +
         ",q=" + std::to_string(q_) + ")";
}

double Potential::a_radial(double r2) const {
  if (family_ == Family::kConstant) return a0_;
  return 1.0 - mu_ * std::pow(1.0 + r2, -q_);
}

double Potential::W_radial(double r2) const {
  if (family_ == Family::kConstant) return 0.0;
  return 2.0 * q_ * mu_ * r2 * std::pow(1.0 + r2, -q_ - 1.0);
}

double Potential::xgrad_W_radial(double r2) const {
  if (family_ == Family::kConstant) return 0.0;
  return 4.0 * q_ * mu_ * r2 * (1.0 - q_ * r2) * std::pow(1.0 + r2, -q_ - 2.0);
}

namespace {
double rsq(const double* x, int d) {
  double r2 = 0.0;
  for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
  return r2;
}
}  // namespace

double Potential::a(const double* x, int d) const {
  return a_radial(rsq(x, d));
}

void Potential::grad_a(const double* x, int d, double* g) const {
  if (family_ == Family::kConstant) {
    for (int i = 0; i < d; ++i) g[i] = 0.0;
    return;
  }
  // grad a = 2 mu q (1+r^2)^{-q-1} x
  const double f = 2.0 * mu_ * q_ * std::pow(1.0 + rsq(x, d), -q_ - 1.0);
  for (int i = 0; i < d; ++i) g[i] = f * x[i];
}

double Potential::W(const double* x, int d) const {
  return W_radial(rsq(x, d));
}

double Potential::a_inf() const {
  return family_ == Family::kConstant ? a0_ : 1.0;
}

double Potential::a_star() const {
  // For the well, a is radially increasing, so the infimum sits at 0.
  return family_ == Family::kConstant ? a0_ : 1.0 - mu_;
}

double Potential::sup_W() const {
  if (family_ == Family::kConstant) return 0.0;
  // maximize 2 q mu t (1+t)^{-q-1} over t = r^2 >= 0: t* = 1/q.
  return 2.0 * mu_ * std::pow(q_ / (q_ + 1.0), q_ + 1.0);
}

double Potential::sup_one_minus_a() const {
  return family_ == Family::kConstant ? std::fabs(1.0 - a0_) : mu_;
}

bool Potential::identically_one() const {
  return (family_ == Family::kConstant && a0_ == 1.0) ||
         (family_ == Family::kInversePowerWell && mu_ == 0.0);
}

Field Potential::sample_a(const Grid& g) const {
  Field out(g);
  double x[2];
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.point(i, x);
    out.v[i] = a_radial(rsq(x, g.d));
  }
  return out;
}

Field Potential::sample_W(const Grid& g) const {
  Field out(g);
  double x[2];
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.point(i, x);
    out.v[i] = W_radial(rsq(x, g.d));
  }
  return out;
}

//----------------------------------------------------------------------------
// hypothesis checks
//----------------------------------------------------------------------------

double a1_threshold(const PhysParams& pp) {
  const double d = pp.d, s = pp.s, p = pp.p;
  const double t1 = d * (d - 2.0 * s) / (d * d - 2.0 * s * (d - 2.0 * s));
  const double t2 = 2.0 * d / (d * p - 4.0 * s);
  return std::max(t1, t2);
}

double a5_rhs(const PhysParams& pp, double a_star) {
  const double d = pp.d, s = pp.s, p = pp.p;
  return (2.0 * d + p * (2.0 * s - d)) * ((d * p - 4.0 * s) * a_star - 2.0 * d) /
         (8.0 * (p - 2.0) * s);
}

ConditionVerdict check_A1(const Potential& a, const PhysParams& pp) {
  ConditionVerdict v;
  v.name = "A1";
  v.lhs = a.a_star();
  v.rhs = a1_threshold(pp);
  v.pass = v.lhs > v.rhs;
  v.note = "inf a must exceed the coercivity threshold";
  return v;
}

ConditionVerdict check_A2(const Potential& a) {
  ConditionVerdict v;
  v.name = "A2";
  v.lhs = a.a_inf();
  v.rhs = 1.0;
  v.pass = a.a_inf() == 1.0;
  v.note = "a must tend to 1 at infinity";
  return v;
}

ConditionVerdict check_A3(const Potential& a, const Grid& g) {
  ConditionVerdict v;
  v.name = "A3";
  Field W = a.sample_W(g);
  double wmin = 0.0;
  std::size_t strict = 0;
  for (double w : W.v) {
    wmin = std::min(wmin, w);
    if (w > 1e-10) ++strict;
  }
  v.lhs = wmin;
  v.rhs = 0.0;
  v.pass = wmin >= -1e-12 && strict > 0;
  v.note = "W >= 0 with strict inequality on a positive-measure set (" +
           std::to_string(strict) + " strict cells)";
  return v;
}

ConditionVerdict check_A4(const Potential& a, const PhysParams& pp,
                          const Grid& g) {
  ConditionVerdict v;
  v.name = "A4";
  const double d = pp.d;
  // numeric box maximum of d*a + W - d
  Field A = a.sample_a(g);
  Field W = a.sample_W(g);
  double boxmax = -1e300;
  for (std::size_t i = 0; i < A.size(); ++i)
    boxmax = std::max(boxmax, d * A.v[i] + W.v[i] - d);
  v.lhs = boxmax;
  v.rhs = 0.0;
  const bool numeric_pass = boxmax <= 1e-12;

  // closed-form statement where available
  if (a.family() == Potential::Family::kInversePowerWell) {
    // d*a + W - d = mu (1+r^2)^{-q-1} ((2q-d) r^2 - d) <= 0  iff  2q <= d
    const bool symbolic_pass = 2.0 * a.q() <= d;
    v.pass = symbolic_pass;
    v.note = symbolic_pass ? "closed form: 2q <= d; box maximum agrees"
                           : "closed form: 2q > d violates the bound";
    if (symbolic_pass != numeric_pass)
      v.note += " (warning: sampled box disagrees with the closed form)";
  } else {
    v.pass = numeric_pass;
    v.note = "constant family: d*a <= d iff a0 <= 1";
  }
  return v;
}

ConditionVerdict check_A5(const Potential& a, const PhysParams& pp) {
  ConditionVerdict v;
  v.name = "A5";
  v.lhs = a.sup_W();
  v.rhs = a5_rhs(pp, a.a_star());
  v.pass = v.lhs <= v.rhs;
  v.note = "||W||_inf against the window bound";
  return v;
}

A6Result check_A6(const Potential& a, const PhysParams& pp) {
  A6Result r;
  const double d = pp.d, s = pp.s, p = pp.p;
  const double denom1 = 2.0 * d - d * p + 4.0 * s;
  r.t1 = denom1 != 0.0 ? 2.0 * d / denom1
                       : std::numeric_limits<double>::infinity();
  r.t2 = 2.0 * d / (d * p - 4.0 * s);
  r.admissible = r.t1 > 0.0 && std::isfinite(r.t1);
  r.vacuous_pass = a.identically_one();
  if (!r.admissible && !r.vacuous_pass) r.flag = "inadmissible-as-printed";
  if (r.vacuous_pass) r.flag = "vacuous (1 - a == 0)";
  return r;
}

ConditionReport check_conditions(const Potential& a, const PhysParams& pp,
                                 const Grid& g) {
  ConditionReport r;
  r.a_star = a.a_star();
  r.a_inf = a.a_inf();
  r.sup_W = a.sup_W();
  r.sup_gap = a.sup_one_minus_a();
  r.a1_thresh = a1_threshold(pp);
  r.a5_bound = a5_rhs(pp, a.a_star());
  r.A1 = check_A1(a, pp);
  r.A2 = check_A2(a);
  r.A3 = check_A3(a, g);
  r.A4 = check_A4(a, pp, g);
  r.A5 = check_A5(a, pp);
  r.A6 = check_A6(a, pp);
  return r;
}

double sup_gap_threshold(const PhysParams& pp, double m_c, double wc_lp_pow_p,
                         double h2) {
  if (!(m_c > 0.0) || !(wc_lp_pow_p > 0.0))
    throw std::invalid_argument(
        "sup_gap_threshold: needs positive limit level and L^p mass");
  const double growth = std::exp(0.5 * (pp.p - 2.0) * pp.d * h2);
  return pp.p * m_c / (growth * wc_lp_pow_p);
}

Delta0Result compute_delta0(const PhysParams& pp, double m_c, double supW,
                            double a_star) {
  const double d = pp.d, s = pp.s, p = pp.p;
  const double gap = d * (p - 2.0) - 4.0 * s;
  const double coercive = (d * p - 4.0 * s) * a_star - 2.0 * d;
  if (!(coercive > 0.0))
    throw std::runtime_error(
        "delta0: coercivity denominator (dp-4s) a_star - 2d is not positive "
        "(A1 fails); the multiplier window is undefined");
  if (!(gap > 0.0))
    throw std::runtime_error("delta0: parameters outside the supercritical window");

  const double base = 4.0 * (p * (2.0 * s - d) + 2.0 * d) / gap;
  const double correction = (p - 2.0) * supW / gap * 16.0 * s / coercive;

  Delta0Result r;
  r.lambda0 = base + correction;
  r.delta0 = r.lambda0 * m_c;
  const double th = theta(pp);
  r.two_theta = 2.0 * th;
  r.three_theta = 3.0 * th;
  r.window_ok = r.lambda0 > r.two_theta && r.lambda0 <= r.three_theta;
  return r;
}

}  // namespace fnls
