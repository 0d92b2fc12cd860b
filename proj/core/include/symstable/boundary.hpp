#pragma once

// Closed forms and expansions at the special exponents: the Cauchy Taylor
// coefficients at alpha = 1, the normal density at alpha = 2 with its
// heavy-tail correction, and the alpha = 1/2 Fresnel representation.

#include "symstable/params.hpp"

namespace symstable {

/// Derivatives at alpha = 1 for a fixed x. Suffix a = d/dalpha, p = d/dx.
struct CauchyCoeffs {
  double f1, fa1, faa1, faaa1;
  double fp1, fpa1, fpaa1;
  double fpp1, fppa1, fppaa1;
};

/// Any finite x; odd members change sign with x.
CauchyCoeffs cauchy_coeffs(double x);

/// Taylor polynomial in (alpha - 1): cubic for f, quadratic for f' and f'',
/// linear for f_alpha and f_alpha_alpha.
double cauchy_taylor(double x, double alpha, Quantity q);

/// N(0, 2) density and its first two x-derivatives. Throws
/// std::invalid_argument for alpha-derivative quantities.
double gaussian_closed(double x, Quantity q);

/// max(integral value, f(x;2) + Gamma(alpha+1)/2 x^{-alpha-1} (2 - alpha)),
/// never negative. Requires alpha in (1.99999, 2] and x > 0.
double gaussian_tail_f(double x, double alpha);

/// The alpha = 1/2 density and its first two x-derivatives through Fresnel
/// integrals. Throws std::domain_error for x <= 0 and std::invalid_argument
/// for alpha-derivative quantities.
double half_stable_oracle(double x, Quantity q);

}  // namespace symstable
