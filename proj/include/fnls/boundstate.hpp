#pragma once

//============================================================================
// boundstate.hpp
//
// Constructive linking search for a bound state on the mass sphere
// S_c = { u : ||u||_2 = c } of
//
//     F(u) = 1/2 ||(-D)^{s/2}u||^2 - 1/p int a(x)|u|^p,
//
// in the mass-supercritical window with an asymptotically flat potential a.
//
// The search scaffolding is the two-parameter family
//
//     gamma(y, h) = h * (w_c(. - y)),   (y, h) in Q = B_R(0) x [h1, h2],
//
// built on the rescaled homogeneous profile w_c:
//
//   * choose_box certifies a box Q whose boundary values stay below
//     m_c + eps (side |y| = R) while the deep cap h2 is strictly negative
//     and the shallow cap h1 sits below 0.9 m_c -- the linking geometry.
//   * family_max samples F over Q; its maximum is an upper bound for the
//     minimax level and its argmax seeds the solver.
//   * saddle_solve runs the fiber-reduced descent: ascend each iterate to
//     the top of its dilation fiber (fiber_maximize), then take a
//     preconditioned, mass-projected descent step on the reduced value
//     phi(u) = F(h*(u) * u) with Armijo backtracking, keeping iterates
//     nonnegative and exactly on S_c.  At a critical point the fiber
//     stationarity *is* the Pohozaev identity, so the solver certifies
//     both the tangential residual and the Pohozaev scalar.
//
// Multiplier and energy windows (lambda in (-delta0/c^2, 0), energy in
// (m_c, 2 m_c)) are checked at convergence and surfaced as recorded
// violations -- never silently accepted or suppressed.
//============================================================================

#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/functionals.hpp"
#include "fnls/groundstate.hpp"
#include "fnls/params.hpp"
#include "fnls/potential.hpp"

namespace fnls {

// h with d/dh F(h * u) = 0 (|derivative| <= 1e-10), located by outward
// bracketing and safeguarded Newton; the point is verified to be the fiber
// maximum.  Errors: no sign change within |h| <= h_max ("fiber unbounded");
// stationary point fails the maximum test.
double fiber_maximize(const FiberProfile& prof, double h_max = 6.0);
double fiber_maximize(const Field& u, const Potential& a, const PhysParams& pp,
                      double h_max = 6.0);

struct LinkingOptions {
  int n_radial = 9;        // radial y-samples (0..R inclusive)
  int n_h = 21;            // h-samples (h1..h2 inclusive)
  double h_cap = 6.0;      // |h1|, h2 search limit
  double probe_frac = 0.4; // y-probes range over [0, probe_frac * L]
  double growth = 1.5;     // R growth factor
  double R0 = 1.0;         // initial radius
};

struct LinkingBox {
  double R = 0.0;
  double h1 = 0.0;   // < 0
  double h2 = 0.0;   // > 0
  int n_radial = 0;  // sampling density the certification used
  int n_h = 0;
  // Certified sampled maxima of F over the pieces of the boundary.
  double side_max = 0.0;   // |y| = R, h in [h1, h2]
  double cap1_max = 0.0;   // h = h1, |y| <= R
  double cap2_max = 0.0;   // h = h2, |y| <= R
  double boundary_max = 0.0;
};

// Certify a linking box for the family through st.wc.  eps_frac is the
// boundary headroom as a fraction of m_c (side max < m_c + eps_frac * m_c).
// Errors: R would exceed probe_frac * L (grid too small for the potential's
// decay); no admissible h1/h2 within |h| <= h_cap.
LinkingBox choose_box(const ScaledState& st, const Potential& a,
                      const PhysParams& pp, double eps_frac = 0.1,
                      const LinkingOptions& opts = {});

struct FamilyMaxResult {
  double value = 0.0;       // max of F over the sampled box
  double y = 0.0;           // argmax offset radius (family is radial in y)
  double h = 0.0;           // argmax fiber parameter
  double boundary_max = 0.0;
};

// Sampled maximum of F(gamma(y,h)) over Q; an upper bound for the minimax
// level, and its argmax is the solver seed.  Errors: interior maximum below
// the boundary maximum (box rejected).
FamilyMaxResult family_max(const LinkingBox& box, const ScaledState& st,
                           const Potential& a, const PhysParams& pp);

struct SaddleOptions {
  double tol_grad = 1e-6;      // weighted tangent residual <= tol_grad * c
  double tol_pohozaev = 1e-6;  // |pohozaev| <= tol_pohozaev * s * K(u)
  int max_iter = 3000;
  double h_max = 6.0;
  bool enforce_nonneg = true;
  // Window context (0 disables the corresponding check).
  double m_c = 0.0;
  double delta0 = 0.0;
  double family_max_value = 0.0;
  double boundary_max = 0.0;
};

struct IterRow {
  int iteration = 0;
  double reduced_value = 0.0;  // F at the top of the iterate's fiber
  double tangent_res = 0.0;    // weighted norm
  double pohozaev_res = 0.0;
  double lambda = 0.0;
};

struct BoundStateSolution {
  Field u;                 // nonnegative, ||u||_2 = c
  double c = 0.0;
  double lambda = 0.0;     // multiplier, expected < 0
  double energy = 0.0;     // F(u)
  double tangent_res = 0.0;   // weighted norm at u
  double pohozaev_res = 0.0;
  std::vector<double> barycenter;  // empty if undefined (recorded below)
  int iterations = 0;
  double m_c = 0.0;        // window context echoed from the options
  double delta0 = 0.0;
  std::vector<IterRow> trajectory;
  std::vector<std::string> window_violations;  // empty when all checks hold

  bool windows_ok() const { return window_violations.empty(); }
};

// Fiber-reduced descent from the family_max seed.  Errors: max_iter
// exceeded; Armijo step collapse (tau < 1e-12); fiber search failure.
// Window violations are recorded in the solution, not thrown.
BoundStateSolution saddle_solve(const Field& u0, const Potential& a,
                                const PhysParams& pp,
                                const SaddleOptions& opts = {});

struct SolutionCheck {
  double mass = 0.0;
  double mass_err = 0.0;            // | ||u|| - c |
  double lambda_recomputed = 0.0;
  double lambda_diff = 0.0;
  double el_res_l2 = 0.0;           // ||(-D)^s u - lambda u - a|u|^{p-2}u||_2
  double el_res_weighted = 0.0;
  double tangent_res = 0.0;
  double tangent_diff = 0.0;
  double pohozaev = 0.0;
  double pohozaev_diff = 0.0;
  bool consistent = false;          // all stored values reproduced to 1e-10
};

// Recompute every certified quantity of a solution from scratch and compare
// with the stored values.  Errors: mismatch beyond 1e-10 (corruption).
SolutionCheck verify_solution(const BoundStateSolution& sol,
                              const Potential& a, const PhysParams& pp);

}  // namespace fnls
