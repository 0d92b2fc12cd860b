#include "symstable/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "symstable/specfun.hpp"
#include "triplet.hpp"
#include "zolotarev.hpp"

namespace symstable {

namespace {

using LD = long double;
constexpr LD kPi = std::numbers::pi_v<LD>;
constexpr LD kEuler = std::numbers::egamma_v<LD>;
constexpr LD kZeta3 = 1.2020569031595942853997381615114L;

struct Digamma {
  LD gamma, psi, psi1, psi2;
};

// psi family at nu = 2, 3, 4 from psi(1) = -gamma, psi'(1) = pi^2/6,
// psi''(1) = -2 zeta(3) and the unit-step recurrences.
Digamma integer_point(int nu) {
  Digamma d{1, -kEuler, kPi * kPi / 6, -2 * kZeta3};
  for (int k = 1; k < nu; ++k) {
    d.gamma *= k;
    d.psi += LD(1) / k;
    d.psi1 -= LD(1) / (LD(k) * k);
    d.psi2 += LD(2) / (LD(k) * k * k);
  }
  return d;
}

// int_0^inf u^{nu-1} e^{-u} log^3 u cos(u y) du
LD g_third(int nu, LD y) {
  const Digamma d = integer_point(nu);
  const LD z = std::atan(y);
  const LD l = std::log1p(y * y);
  const LD r = std::pow(1 + y * y, -LD(nu) / 2);
  const LD g1 = d.gamma * d.psi;
  const LD g2 = d.gamma * (d.psi * d.psi + d.psi1);
  const LD c = std::cos(nu * z), s = std::sin(nu * z);
  const LD m = d.psi - l / 2;
  const LD t1 = r * (d.gamma / 4 * l * l - g1 * l + g2) * (c * m - z * s);
  const LD t2 = r * (-d.gamma * l + 2 * g1) * (-z * s * m - z * z * c + c * d.psi1);
  const LD t3 = r * d.gamma * (-z * z * c * m - 2 * z * s * d.psi1 + z * z * z * s + c * d.psi2);
  return t1 + t2 + t3;
}

void require_x_quantity(Quantity q) {
  if (q != Quantity::F && q != Quantity::Dx && q != Quantity::Dxdx) {
    throw std::invalid_argument("closed form available for f, f' and f'' only");
  }
}

}  // namespace

CauchyCoeffs cauchy_coeffs(double xd) {
  if (!std::isfinite(xd)) throw std::domain_error("cauchy_coeffs: x must be finite");
  const LD x = xd, x2 = x * x;
  const LD u = 1 + x2;
  const LD lg = std::log1p(x2);
  const LD A = 1 - kEuler - lg / 2;
  const LD B = A + LD(0.5);
  const LD T = std::atan(x);
  const LD Q = kPi * kPi / 6 + A * A - 1 - T * T;
  const LD u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  const LD x4 = x2 * x2, x6 = x4 * x2;

  CauchyCoeffs c{};
  c.f1 = static_cast<double>(1 / (kPi * u));
  c.fa1 = static_cast<double>(((x2 - 1) * A + 2 * x * T) / (kPi * u2));
  c.faa1 = static_cast<double>(
      ((x4 - 6 * x2 + 1) * Q + 8 * x * (x2 - 1) * T * B + 2 * ((1 - 3 * x2) * A - x * u * T)) /
      (kPi * u3));
  c.faaa1 = static_cast<double>((-g_third(4, x) + 3 * g_third(3, x) - g_third(2, x)) / kPi);

  c.fp1 = static_cast<double>(-2 * x / (kPi * u2));
  c.fpa1 = static_cast<double>(((-2 * x2 * x + 6 * x) * B + (2 - 6 * x2) * T) / (kPi * u3));
  c.fpaa1 = static_cast<double>(
      (-2 * x * (x4 - 14 * x2 + 9) * Q - 8 * (3 * x4 - 8 * x2 + 1) * T * B -
       2 * x * (x4 - 22 * x2 + 17) * A - 4 * (x4 - 6 * x2 + 1) * T + 8 * x * (x2 - 1)) /
      (kPi * u4));

  c.fpp1 = static_cast<double>((6 * x2 - 2) / (kPi * u3));
  c.fppa1 = static_cast<double>(
      2 * ((x4 - 6 * x2 + 1) * (LD(5.5) - 3 * kEuler - LD(1.5) * lg) + 12 * x * (x2 - 1) * T) /
      (kPi * u4));
  c.fppaa1 = static_cast<double>(
      (6 * (x6 - 25 * x4 + 35 * x2 - 3) * Q + 96 * x * (x4 - 5 * x2 + 2) * T * B +
       2 * (5 * x6 - 155 * x4 + 235 * x2 - 21) * A + 4 * x * (11 * x4 - 70 * x2 + 31) * T +
       2 * (x6 - 50 * x4 + 85 * x2 - 8)) /
      (kPi * u5));
  return c;
}

double cauchy_taylor(double x, double alpha, Quantity q) {
  const CauchyCoeffs c = cauchy_coeffs(x);
  const double d = alpha - 1.0;
  switch (q) {
    case Quantity::F: return c.f1 + d * (c.fa1 + d * (c.faa1 / 2 + d * c.faaa1 / 6));
    case Quantity::Dx: return c.fp1 + d * (c.fpa1 + d * c.fpaa1 / 2);
    case Quantity::Dxdx: return c.fpp1 + d * (c.fppa1 + d * c.fppaa1 / 2);
    case Quantity::Dalpha: return c.fa1 + d * c.faa1;
    case Quantity::Dalpha2: return c.faa1 + d * c.faaa1;
  }
  throw std::invalid_argument("unknown quantity");
}

double gaussian_closed(double x, Quantity q) {
  require_x_quantity(q);
  const double f = std::exp(-x * x / 4) / (2 * std::sqrt(std::numbers::pi));
  switch (q) {
    case Quantity::Dx: return -x / 2 * f;
    case Quantity::Dxdx: return (x * x / 4 - 0.5) * f;
    default: return f;
  }
}

double gaussian_tail_f(double x, double alpha) {
  if (!(alpha > 1.99999 && alpha <= 2.0)) {
    throw std::domain_error("gaussian_tail_f: alpha must lie in (1.99999, 2]");
  }
  if (!(x > 0.0)) throw std::domain_error("gaussian_tail_f: x must be positive");
  return detail::gaussian_max_rule(x, alpha);
}

double detail::gaussian_max_rule(double x, double alpha) {
  const double base = gaussian_closed(x, Quantity::F);
  if (alpha == 2.0) return base;
  const double heuristic =
      base + std::tgamma(alpha + 1) / 2 * std::pow(x, -alpha - 1) * (2 - alpha);
  const auto integral = zol_integral(Quantity::F, x, alpha, zol_default_spec());
  return std::max({0.0, heuristic, integral.value});
}

double half_stable_oracle(double x, Quantity q) {
  require_x_quantity(q);
  if (!(x > 0.0)) throw std::domain_error("half_stable_oracle: x must be positive");
  const LD xl = x;
  const LD y = 1 / std::sqrt(2 * kPi * xl);
  // with t = pi y^2 / 2 = 1/(4x): sin(t)(1/2 - S) + cos(t)(1/2 - C) = g(y) and
  // cos(t)(1/2 - S) - sin(t)(1/2 - C) = f(y)
  const auto aux = fresnel_aux(static_cast<double>(y));
  const LD P = aux.g;
  const LD R = aux.f;
  const LD k = 1 / std::sqrt(2 * kPi);
  switch (q) {
    case Quantity::Dx:
      return static_cast<double>(-LD(1.5) * std::pow(xl, LD(-2.5)) * k * P -
                                 std::pow(xl, LD(-3.5)) * k / 4 * R +
                                 std::pow(xl, LD(-3)) / (4 * kPi));
    case Quantity::Dxdx:
      return static_cast<double>(std::pow(xl, LD(-3.5)) * k / 4 * (15 - 1 / (4 * xl * xl)) * P +
                                 LD(1.25) * std::pow(xl, LD(-4.5)) * k * R -
                                 LD(9) / 8 * std::pow(xl, LD(-4)) / kPi);
    default: return static_cast<double>(std::pow(xl, LD(-1.5)) * k * P);
  }
}

}  // namespace symstable
