#pragma once

//============================================================================
// potential.hpp
//
// Coefficient families a(x) for the nonlinearity a(x)|u|^{p-2}u, together
// with the radial derivative weight W(x) = x . grad a(x) and the hypothesis
// checker used to certify a configuration before the constrained solve.
//
// Families:
//   CONSTANT(a0)              a == a0, W == 0.
//   INVERSE_POWER_WELL(mu,q)  a(x) = 1 - mu (1+|x|^2)^{-q}, mu in (0,1),
//                             q > 0.  W(x) = 2 q mu |x|^2 (1+|x|^2)^{-q-1},
//                             sup W = 2 mu (q/(q+1))^{q+1}, inf a = 1 - mu.
//
// The checks A1..A5 take closed-form constants where the family provides
// them and certify pointwise statements on the sampled box.  A6's first
// exponent t1 = 2d/(2d - dp + 4s) is nonpositive throughout the admissible
// parameter window; it is reported as inadmissible-as-printed with the
// computed exponents rather than being silently reinterpreted (a potential
// with 1 - a == 0 still passes vacuously).
//============================================================================

#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/params.hpp"

namespace fnls {

class Potential {
 public:
  enum class Family { kConstant, kInversePowerWell };

  static Potential constant(double a0);
  static Potential inverse_power_well(double mu, double q);

  Family family() const { return family_; }
  double a0() const { return a0_; }
  double mu() const { return mu_; }
  double q() const { return q_; }
  std::string label() const;

  // Pointwise evaluation (both families are radial; r2 = |x|^2).
  double a_radial(double r2) const;
  double W_radial(double r2) const;        // x . grad a
  double xgrad_W_radial(double r2) const;  // x . grad W

  double a(const double* x, int d) const;
  void grad_a(const double* x, int d, double* g) const;
  double W(const double* x, int d) const;

  // Closed-form constants.
  double a_inf() const;             // declared limit at infinity
  double a_star() const;            // inf a
  double sup_W() const;             // ||W||_inf
  double sup_one_minus_a() const;   // sup |1 - a|
  bool identically_one() const;

  Field sample_a(const Grid& g) const;
  Field sample_W(const Grid& g) const;

 private:
  Family family_ = Family::kConstant;
  double a0_ = 1.0;
  double mu_ = 0.0;
  double q_ = 1.0;
};

//----------------------------------------------------------------------------
// hypothesis checks
//----------------------------------------------------------------------------

struct ConditionVerdict {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double lhs = 0.0;   // quantity tested
  double rhs = 0.0;   // threshold
  std::string note;
};

// max{ d(d-2s)/(d^2 - 2s(d-2s)), 2d/(dp-4s) }
double a1_threshold(const PhysParams& pp);

// (2d + p(2s-d)) ((dp-4s) a_star - 2d) / (8 (p-2) s)
double a5_rhs(const PhysParams& pp, double a_star);

struct A6Result {
  double t1 = 0.0;
  double t2 = 0.0;
  bool admissible = false;   // t1 positive (usable as a Lebesgue exponent)
  bool vacuous_pass = false;  // 1 - a == 0
  std::string flag;           // "inadmissible-as-printed" when !admissible
};

ConditionVerdict check_A1(const Potential& a, const PhysParams& pp);
ConditionVerdict check_A2(const Potential& a);
ConditionVerdict check_A3(const Potential& a, const Grid& g);
ConditionVerdict check_A4(const Potential& a, const PhysParams& pp,
                          const Grid& g);
ConditionVerdict check_A5(const Potential& a, const PhysParams& pp);
A6Result check_A6(const Potential& a, const PhysParams& pp);

struct ConditionReport {
  double a_star = 0.0, a_inf = 0.0, sup_W = 0.0, sup_gap = 0.0;
  double a1_thresh = 0.0, a5_bound = 0.0;
  ConditionVerdict A1, A2, A3, A4, A5;
  A6Result A6;
  bool all_core_pass() const {
    return A1.pass && A2.pass && A3.pass && A4.pass && A5.pass;
  }
};

ConditionReport check_conditions(const Potential& a, const PhysParams& pp,
                                 const Grid& g);

// Threshold on sup|1-a| for the linking-level gap:
//   p * m_c / ( e^{(p-2) d h2 / 2} * ||w_c||_p^p ).
double sup_gap_threshold(const PhysParams& pp, double m_c,
                         double wc_lp_pow_p, double h2);

// Multiplier-window depth delta0 and its normalized form lambda0:
//   delta0 = [ 4 (p(2s-d)+2d)/(d(p-2)-4s)
//              + (p-2) supW/(d(p-2)-4s) * 16 s / ((dp-4s) a_star - 2d) ] m_c.
// Errors: nonpositive denominator (dp-4s) a_star - 2d (A1 failure).
struct Delta0Result {
  double delta0 = 0.0;
  double lambda0 = 0.0;  // delta0 / m_c
  double two_theta = 0.0;
  double three_theta = 0.0;
  bool window_ok = false;  // 2 theta < lambda0 <= 3 theta
};

Delta0Result compute_delta0(const PhysParams& pp, double m_c, double supW,
                            double a_star);

}  // namespace fnls
