#pragma once

//============================================================================
// spectral.hpp
//
// Pseudospectral realization of the fractional Laplacian on the periodic
// box.  The operator (-Delta)^s is the Fourier multiplier |k|^{2s} on the
// discrete wavenumbers k_j = pi*j/L (zero mode -> 0); s = 1 reduces to the
// exact spectral Laplacian.  Spectra use the unshifted FFTW index order and
// the normalization u_hat = DFT(u)/n^d, so Parseval reads
//
//     h^d sum_i |u_i|^2  =  (2L)^d sum_k |u_hat_k|^2.
//
// All fields are real; the inverse transform verifies that the imaginary
// residue is below 1e-10 of the field norm and discards it, raising an
// error otherwise.
//============================================================================

#include <complex>
#include <vector>

#include "fnls/field.hpp"

namespace fnls {

using cplx = std::complex<double>;

std::vector<cplx> fft(const Field& f);
Field ifft(const Grid& g, const std::vector<cplx>& spec);

// Cached multiplier tables on the grid's wavenumber lattice.
const std::vector<double>& multiplier_frac(const Grid& g, double s);
const std::vector<double>& multiplier_inv_helmholtz(const Grid& g, double s);

// (-Delta)^s f.  pre: s in (0,1].
Field frac_laplacian(const Field& f, double s);

// (1 + (-Delta)^s)^{-1} f  (descent preconditioner / iteration smoother).
Field helmholtz_inverse(const Field& f, double s);

// ||(-Delta)^{s/2} f||_2^2, always >= 0, zero iff f is constant.
double gagliardo_energy(const Field& f, double s);

// Quadrature functionals (plain rectangle rule, weight h^d).
double l2_inner(const Field& f, const Field& g);
double l2_norm_sq(const Field& f);
double l2_norm(const Field& f);
double lp_norm(const Field& f, double q);    // pre: q >= 1
double lp_norm_pow(const Field& f, double q);  // integral of |f|^q

// ||(1 + (-Delta)^s)^{-1/2} r||_2 : the dual-norm surrogate used as the
// convergence measure of the constrained solver.
double weighted_residual_norm(const Field& r, double s);

// Pointwise maps.
Field signed_pow(const Field& u, double q);  // sign(u)*|u|^q, q > 0
Field abs_field(const Field& u);
Field clamp0(const Field& u);  // max(u, 0)

}  // namespace fnls
