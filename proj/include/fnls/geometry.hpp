#pragma once

//============================================================================
// geometry.hpp
//
// The geometric actions on fields used by the constrained solver:
//
//  * fiber_scale: the mass-preserving dilation (h * u)(x) = e^{dh/2} u(e^h x),
//    realized by evaluating the trigonometric interpolant of u at e^h x.
//    Exact L2 invariance and the kinetic scaling law
//    ||(-D)^{s/2}(h*u)||^2 = e^{2sh} ||(-D)^{s/2}u||^2 hold up to resampling
//    error; callers are protected by an aliasing check on the mass that the
//    dilation would push outside the box.
//
//  * translate: u(. - z) for arbitrary real shifts via spectral phases.
//
//  * local_average: nu(x) = average of |u| over the unit ball centered at x
//    (periodic convolution with the normalized sampled indicator of B_1).
//
//  * barycenter: beta(u) = integral of x against the normalized truncation
//    u_trunc = (nu - max(nu)/2)_+ ; well-defined once u_trunc is supported
//    away from the boundary shell.
//============================================================================

#include <vector>

#include "fnls/field.hpp"

namespace fnls {

// pre: |h| <= h_max.  Errors: aliasing (significant mass would leave the
// box), non-negligible imaginary residue (rough/non-bandlimited data).
Field fiber_scale(const Field& f, double h, double h_max = 6.0);

// z has f.grid.d components; arbitrary real shifts allowed.
Field translate(const Field& f, const double* z);

// pre: grid spacing < 1 (the averaging ball must be resolved).
Field local_average(const Field& f);

// Returns the d components of beta(u) in box coordinates.
// Errors: identically-zero field; truncated bump touching the outer 10%
// shell of the box (barycenter would be wrap-around dependent).
std::vector<double> barycenter(const Field& f);

// A point on the dilation fiber through `base`.
struct FiberPoint {
  double h = 0.0;
  Field base;
};

Field realize(const FiberPoint& fp, double h_max = 6.0);

}  // namespace fnls
