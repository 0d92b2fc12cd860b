#pragma once

// Fisher information of the symmetric stable family in (mu, sigma, alpha),
// at mu = 0, sigma = 1. For general sigma the (mu, mu), (sigma, sigma)
// entries scale by 1/sigma^2 and (sigma, alpha) by 1/sigma. The (mu, sigma)
// and (mu, alpha) entries vanish by symmetry.

#include "symstable/params.hpp"

namespace symstable {

struct InfoMatrix {
  double alpha = 0.0;
  double i_mumu = 0.0;
  double i_sigmasigma = 0.0;
  double i_alphaalpha = 0.0;  // +inf at alpha = 2
  double i_sigmaalpha = 0.0;  // NaN (undefined) at alpha = 2
  double abs_error = 0.0;     // largest quadrature error estimate over entries
  bool converged = true;
};

/// alpha in [0.2, 2]. Throws std::domain_error outside, UnsupportedParameter
/// below 0.2.
InfoMatrix info_matrix(double alpha);

/// Closed form at the Cauchy point.
InfoMatrix cauchy_info_analytic();

/// 1/(4 D log(1/D)) with D = 2 - alpha. Throws std::domain_error unless
/// alpha lies in (1, 2).
double ns_asymptote(double alpha);

struct NearTwoInfo {
  double i_alphaalpha = 0.0;
  double i_sigmaalpha = 0.0;
  AccuracyClass accuracy = AccuracyClass::Full;
};

/// alpha in (1.999, 2). Variant 1 takes the density beyond x = 7 from the
/// near-normal max rule; variant 2 from the tail series beyond
/// 10^{3/(1+alpha)}. Throws UnsupportedParameter for 2 - alpha < 1e-7 and
/// reports Degraded for 2 - alpha < 1e-6.
NearTwoInfo info_near_two(double alpha, int variant);

}  // namespace symstable
