#pragma once

// Special functions feeding the series and Taylor expansions.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symstable {

/// Gamma and its first two derivatives at a common argument nu.
struct GammaDerivs {
  double gamma;
  double dgamma;   // Gamma'(nu) = Gamma(nu) psi(nu)
  double d2gamma;  // Gamma''(nu) = Gamma(nu) (psi(nu)^2 + psi'(nu))
};

struct FresnelPair {
  double s;  // S(x) = int_0^x sin(pi t^2 / 2) dt
  double c;  // C(x) = int_0^x cos(pi t^2 / 2) dt
};

/// Throws std::domain_error for nu <= 0. Gamma overflows to +inf beyond
/// nu ~ 171.6 in double; use the long double overloads in detail:: there.
GammaDerivs gamma_derivs(double nu);

/// psi (order 0), trigamma (1) and tetragamma (2). Throws std::domain_error
/// for nu <= 0 or an order outside {0, 1, 2}.
double polygamma(int order, double nu);

/// Throws std::domain_error for x < 0.
FresnelPair fresnel(double x);

struct FresnelComplement {
  double half_minus_c;  // 1/2 - C(x)
  double half_minus_s;  // 1/2 - S(x)
};

/// The tails 1/2 - C(x), 1/2 - S(x), computed without cancellation for
/// large x. Throws std::domain_error for x < 0.
FresnelComplement fresnel_complement(double x);

/// Auxiliary functions with 1/2 - C = g cos(t) - f sin(t) and
/// 1/2 - S = f cos(t) + g sin(t), t = pi x^2 / 2. Free of the phase, so
/// f ~ 1/(pi x) and g ~ 1/(pi^2 x^3) hold to full relative precision for
/// large x. Throws std::domain_error for x < 0.
struct FresnelAux {
  double f;
  double g;
};

FresnelAux fresnel_aux(double x);

namespace detail {

template <class Real>
Real digamma(Real x) {
  Real acc = 0;
  while (x < Real(20)) {
    acc -= 1 / x;
    x += 1;
  }
  const Real r = 1 / (x * x);
  const Real tail =
      r * (Real(1) / 12 -
           r * (Real(1) / 120 -
                r * (Real(1) / 252 -
                     r * (Real(1) / 240 -
                          r * (Real(1) / 132 -
                               r * (Real(691) / 32760 - r * (Real(1) / 12)))))));
  return acc + std::log(x) - 1 / (2 * x) - tail;
}

template <class Real>
Real trigamma(Real x) {
  Real acc = 0;
  while (x < Real(20)) {
    acc += 1 / (x * x);
    x += 1;
  }
  const Real r = 1 / (x * x);
  const Real series =
      Real(1) / 6 -
      r * (Real(1) / 30 -
           r * (Real(1) / 42 -
                r * (Real(1) / 30 -
                     r * (Real(5) / 66 -
                          r * (Real(691) / 2730 - r * (Real(7) / 6))))));
  return acc + 1 / x + r / 2 + r * series / x;
}

template <class Real>
Real tetragamma(Real x) {
  Real acc = 0;
  while (x < Real(20)) {
    acc -= 2 / (x * x * x);
    x += 1;
  }
  const Real r = 1 / (x * x);
  const Real series =
      Real(1) / 2 -
      r * (Real(1) / 6 -
           r * (Real(1) / 6 -
                r * (Real(3) / 10 -
                     r * (Real(5) / 6 -
                          r * (Real(691) / 210 - r * (Real(35) / 2))))));
  return acc - r - r / x - r * r * series;
}

/// Gamma(nu), Gamma'(nu), Gamma''(nu) carried as log|Gamma| and the two
/// polygamma factors so callers can stay in log space.
template <class Real>
struct LogGammaDerivs {
  Real log_gamma;  // log Gamma(nu), nu > 0
  Real psi;        // Gamma'/Gamma
  Real psi2_plus_trigamma;  // Gamma''/Gamma
};

template <class Real>
LogGammaDerivs<Real> log_gamma_derivs(Real nu) {
  const Real p = digamma(nu);
  return {std::lgamma(nu), p, p * p + trigamma(nu)};
}

}  // namespace detail
}  // namespace symstable
