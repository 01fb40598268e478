#pragma once

//============================================================================
// groundstate.hpp
//
// The homogeneous limit problem on the box:
//
//     (-Delta)^s w + w = w^{p-1},   w > 0, radial, decaying,
//
// solved by spectral renormalization (Petviashvili) iteration
//
//     u_hat_{n+1} = gamma_n^rho (1+|k|^{2s})^{-1} FFT(u_{n,+}^{p-1}),
//     gamma_n = <u, (1+(-D)^s) u> / <u, u_+^{p-1}>,   rho = (p-1)/(p-2),
//
// from a Gaussian bump.  gamma_n -> 1 at a solution; the stabilization
// exponent rho is the standard choice that makes the fixed point attracting.
//
// On top of the solution w sits the one-parameter mass family: with
// c0 = ||w||_2 and
//
//     theta = (4d - 2p(d-2s)) / (d(p-2) - 4s)   (> 0 in the supercritical
//                                                window),
//     lambda_c = -(c/c0)^{-theta-2},
//
// the profile w_c(x) = (-lambda_c)^{1/(p-2)} w((-lambda_c)^{1/(2s)} x)
// has mass c, solves (-Delta)^s w_c = lambda_c w_c + w_c^{p-1}, and its
// energy obeys m_c = (c/c0)^{-theta} m_{c0}.
//
// rescale_to_mass realizes the dilation exactly: the scaled profile is
// carried on the commensurately scaled grid L_c = L / beta with
// beta = (-lambda_c)^{1/(2s)}, whose sample points are precisely the
// pullbacks of the original ones.  Every discrete quadrature and spectral
// sum then transforms by the exact continuum power laws -- no interpolation
// error enters, and the family identities hold to roundoff on top of the
// solver residual.  rescale_onto_grid is the independent cross-check: it
// resamples the trigonometric interpolant onto the *original* grid, which
// is accurate only for moderate dilations (the profile must stay inside the
// box and inside the resolvable band) and is used to validate the exact
// route where both apply.
//============================================================================

#include <vector>

#include "fnls/field.hpp"
#include "fnls/params.hpp"

namespace fnls {

struct PetvOptions {
  double tol = 1e-10;           // relative L2 residual target
  int max_iter = 2000;
  double init_width_frac = 0.1;  // Gaussian std-dev as a fraction of L
  const Field* init = nullptr;   // optional warm start (overrides Gaussian)
};

struct GroundState {
  Field w;            // positive radial profile, peak at the origin
  PhysParams params;  // (d, s, p) the profile solves
  double c0 = 0.0;    // ||w||_2
  double m_c0 = 0.0;  // F_inf(w)
  double residual = 0.0;   // ||(-D)^s w + w - w^{p-1}||_2
  int iterations = 0;
  double gamma_final = 1.0;  // last Petviashvili factor; -> 1 at convergence
};

// Errors: max_iter exceeded; iterate collapses or blows up (gamma outside
// [1e-6, 1e6] or non-finite).
GroundState solve_limit_equation(const Grid& g, const PhysParams& pp,
                                 const PetvOptions& opts = {});

// theta = (4d - 2p(d-2s)) / (d(p-2) - 4s).  Errors: denominator <= 1e-12
// (mass-critical or subcritical p) or nonpositive result (Sobolev-critical
// or supercritical p).
double theta(const PhysParams& pp);

// -(c/c0)^{-theta-2} < 0.  Errors: nonpositive masses.
double lambda_c(double c, double c0, double theta);

struct ScaledState {
  Field wc;       // on the scaled grid (rescale_to_mass) or source grid
                  // (rescale_onto_grid)
  double c = 0.0;         // ||wc||_2, the prescribed mass
  double lambda_c = 0.0;  // multiplier, < 0
  double theta = 0.0;
  double m_c = 0.0;       // F_inf(wc), > 0 in the supercritical window
};

// Exact dilation onto the scaled grid L_c = L * (-lambda_c)^{-1/(2s)}.
// Errors: dilation factor outside [1e-9, 1e9] (degenerate box).
ScaledState rescale_to_mass(const GroundState& gs, double c);

// Interpolating dilation onto the original grid; inherits fiber_scale's
// aliasing guard, so only moderate c/c0 are representable.
ScaledState rescale_onto_grid(const GroundState& gs, double c);

struct CurveRow {
  double c = 0.0;
  double m_c = 0.0;
  double lambda_c = 0.0;
};

// One rescale_to_mass per entry, in the order given.  For ascending c the
// rows have strictly decreasing m_c and strictly increasing lambda_c.
std::vector<CurveRow> mass_energy_curve(const GroundState& gs,
                                        const std::vector<double>& c_list);

}  // namespace fnls
