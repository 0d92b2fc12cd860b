#include "symstable/specfun.hpp"

#include <complex>
#include <limits>

namespace symstable {

namespace {

constexpr double kFresnelSwitch = 1.6;

void require_positive(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::domain_error("argument must be positive and finite");
  }
}

FresnelPair fresnel_series(double x) {
  using std::numbers::pi;
  const long double t = static_cast<long double>(pi) / 2 * x * x;
  const long double t2 = t * t;
  // term_n = (-1)^n t^n / n!, split into even (C) and odd (S) powers.
  long double s = 0, c = 0;
  long double term = 1;  // t^0 / 0!
  for (int n = 0; n < 200; ++n) {
    const long double cn = term / (4 * n + 1);
    const long double sn = term * t / ((2 * n + 1) * (4 * n + 3));
    c += cn;
    s += sn;
    if (std::fabs(cn) < 1e-20L * std::fabs(c) && std::fabs(sn) < 1e-20L * std::fabs(s)) break;
    term *= -t2 / ((2 * n + 1) * (2 * n + 2));
  }
  return {static_cast<double>(s * x), static_cast<double>(c * x)};
}

// g + i f by the continued fraction for the complementary error function,
// evaluated with the modified Lentz method.
std::complex<double> fresnel_cf_aux(double x) {
  using std::numbers::pi;
  using cplx = std::complex<double>;
  constexpr double tiny = 1e-300;
  const double pix2 = pi * x * x;
  cplx b(1.0, -pix2);
  cplx cc(1.0 / tiny, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  int n = -1;
  for (int k = 2; k <= 500; ++k) {
    n += 2;
    const double a = -static_cast<double>(n) * (n + 1);
    b += 4.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    const cplx del = cc * d;
    h *= del;
    if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < 1e-17) break;
  }
  return x * h;
}

// (1/2 - C) + i (1/2 - S) = (g + i f) e^{i pi x^2 / 2}
std::complex<double> fresnel_cf_complement(double x) {
  using std::numbers::pi;
  const double t = 0.5 * pi * x * x;
  return fresnel_cf_aux(x) * std::complex<double>(std::cos(t), std::sin(t));
}

}  // namespace

GammaDerivs gamma_derivs(double nu) {
  require_positive(nu);
  const long double g = std::tgamma(static_cast<long double>(nu));
  const long double p = detail::digamma(static_cast<long double>(nu));
  const long double t = detail::trigamma(static_cast<long double>(nu));
  return {static_cast<double>(g), static_cast<double>(g * p),
          static_cast<double>(g * (p * p + t))};
}

double polygamma(int order, double nu) {
  require_positive(nu);
  const long double v = nu;
  switch (order) {
    case 0: return static_cast<double>(detail::digamma(v));
    case 1: return static_cast<double>(detail::trigamma(v));
    case 2: return static_cast<double>(detail::tetragamma(v));
    default: throw std::domain_error("polygamma order must be 0, 1 or 2");
  }
}

FresnelPair fresnel(double x) {
  if (!(x >= 0.0)) throw std::domain_error("fresnel: x must be >= 0");
  if (std::isinf(x)) return {0.5, 0.5};
  if (x < kFresnelSwitch) return fresnel_series(x);
  const auto w = fresnel_cf_complement(x);
  return {0.5 - w.imag(), 0.5 - w.real()};
}

FresnelComplement fresnel_complement(double x) {
  if (!(x >= 0.0)) throw std::domain_error("fresnel: x must be >= 0");
  if (std::isinf(x)) return {0.0, 0.0};
  if (x < kFresnelSwitch) {
    const auto p = fresnel_series(x);
    return {0.5 - p.c, 0.5 - p.s};
  }
  const auto w = fresnel_cf_complement(x);
  return {w.real(), w.imag()};
}

FresnelAux fresnel_aux(double x) {
  if (!(x >= 0.0)) throw std::domain_error("fresnel: x must be >= 0");
  if (std::isinf(x)) return {0.0, 0.0};
  if (x < kFresnelSwitch) {
    const auto p = fresnel_series(x);
    const double t = 0.5 * std::numbers::pi * x * x;
    const double hc = 0.5 - p.c, hs = 0.5 - p.s;
    return {hs * std::cos(t) - hc * std::sin(t), hc * std::cos(t) + hs * std::sin(t)};
  }
  const auto w = fresnel_cf_aux(x);
  return {w.imag(), w.real()};
}

}  // namespace symstable
