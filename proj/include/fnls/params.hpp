#pragma once

//============================================================================
// params.hpp
//
// Physical parameters of the equation
//
//     (-Delta)^s u = lambda*u + a(x)*|u|^{p-2}*u,   ||u||_2 = c,
//
// on R^d realized on a periodic box.  Two validation regimes:
//
//  * kOracle:     only s in (0,1], p > 2 - enough for the closed-form
//                 solution tests (which live outside the production window).
//  * kProduction: additionally d > 2s and the mass-supercritical /
//                 Sobolev-subcritical window 2 + 4s/d < p < 2d/(d-2s),
//                 required by the scaling/linking machinery.
//============================================================================

namespace fnls {

enum class ParamRegime { kOracle, kProduction };

struct PhysParams {
  int d = 1;       // spatial dimension
  double s = 1.0;  // fractional order, (0,1]
  double p = 3.0;  // nonlinearity exponent, > 2
  double c = 1.0;  // prescribed mass ||u||_2

  void validate(ParamRegime regime = ParamRegime::kOracle) const;

  bool in_production_window() const;
};

}  // namespace fnls
