#pragma once

// Zolotarev kernel g(phi; alpha, x) for alpha != 1, x > 0, evaluated in log
// space. Angles are carried as the pair (phi, psi = pi/2 - phi); one of the
// two is the integration variable u and is exact, the other is derived. Near
// phi = pi/2, sin(alpha phi) is formed as sin((2 - alpha) phi + 2 psi) so the
// alpha -> 2 endpoint layer keeps full relative precision.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace symstable::detail {

enum class AngleVar { Phi, Psi };

template <class Real>
struct Trig {
  Real phi, psi;
  Real cos_phi;     // = sin(psi)
  Real sin_aphi;    // sin(alpha phi) > 0
  Real cos_aphi;
  Real cos_bphi;    // cos((alpha - 1) phi) > 0
  Real sin_bphi;
};

template <class Real>
struct KernelT {
  Real alpha, x;
  Real am1;    // alpha - 1
  Real beta;   // alpha / (alpha - 1)
  Real log_x;
  AngleVar var;

  KernelT(Real a, Real xx, AngleVar v)
      : alpha(a), x(xx), am1(a - 1), beta(a / (a - 1)), log_x(std::log(xx)), var(v) {}

  static constexpr Real half_pi = std::numbers::pi_v<Real> / 2;

  Trig<Real> trig(Real u) const {
    Trig<Real> t;
    if (var == AngleVar::Phi) {
      t.phi = u;
      t.psi = half_pi - u;
      // from psi on the upper half, consistent with sin(alpha phi) below
      t.cos_phi = u > half_pi / 2 ? std::sin(t.psi) : std::cos(u);
    } else {
      t.psi = u;
      t.phi = half_pi - u;
      t.cos_phi = std::sin(u);
    }
    if (alpha > 1) {
      const Real r = (2 - alpha) * t.phi + 2 * t.psi;  // pi - alpha phi
      t.sin_aphi = std::sin(r);
      t.cos_aphi = -std::cos(r);
    } else {
      t.sin_aphi = std::sin(alpha * t.phi);
      t.cos_aphi = std::cos(alpha * t.phi);
    }
    if (alpha > 1) {
      const Real r = t.psi + (2 - alpha) * t.phi;  // pi/2 - (alpha - 1) phi
      t.cos_bphi = std::sin(r);
      t.sin_bphi = std::cos(r);
    } else {
      t.cos_bphi = std::cos(am1 * t.phi);
      t.sin_bphi = std::sin(am1 * t.phi);
    }
    return t;
  }

  /// log|x cos(phi) / sin(alpha phi)|
  Real log_ratio(const Trig<Real>& t) const {
    return log_x + std::log(t.cos_phi) - std::log(t.sin_aphi);
  }

  Real log_g(const Trig<Real>& t) const {
    // beta L + log cos(b phi) - log cos(phi), regrouped so the cos(phi) -> 0
    // limit carries a single coefficient 1/(alpha - 1).
    return (beta - 1) * std::log(t.cos_phi) + beta * (log_x - std::log(t.sin_aphi)) +
           std::log(t.cos_bphi);
  }

  Real log_g(Real u) const { return log_g(trig(u)); }

  // h1 = L/(alpha-1)^2, h2 = alpha phi cot(alpha phi)/(alpha-1),
  // h3 = phi tan((alpha-1) phi).
  Real h1(const Trig<Real>& t) const { return log_ratio(t) / (am1 * am1); }
  Real h2(const Trig<Real>& t) const {
    return alpha * t.phi * t.cos_aphi / (am1 * t.sin_aphi);
  }
  Real h3(const Trig<Real>& t) const { return t.phi * t.sin_bphi / t.cos_bphi; }

  /// alpha phi^2 / ((alpha-1) sin^2(alpha phi)) - phi^2 / cos^2((alpha-1) phi)
  Real h_alpha_rest(const Trig<Real>& t) const {
    const Real p2 = t.phi * t.phi;
    return beta * p2 / (t.sin_aphi * t.sin_aphi) - p2 / (t.cos_bphi * t.cos_bphi);
  }
};

/// Bisection for log g(u) = log c on [lo, hi] in the integration variable,
/// to a relative width tol (absolute for u > 1).
/// g is monotone in u; returns NaN when c is not bracketed. A root attained
/// within tolerance at an endpoint returns that endpoint.
template <class Real>
Real solve_level(const KernelT<Real>& k, Real log_c, Real lo, Real hi, Real tol = Real(1e-14),
                 int max_iter = 200) {
  Real flo = k.log_g(lo) - log_c;
  Real fhi = k.log_g(hi) - log_c;
  const Real etol = 64 * std::numeric_limits<Real>::epsilon() * (1 + std::fabs(log_c));
  if (std::fabs(fhi) <= etol) return hi;
  if (std::fabs(flo) <= etol) return lo;
  if (std::isnan(flo) || std::isnan(fhi) || (flo < 0) == (fhi < 0)) {
    return std::numeric_limits<Real>::quiet_NaN();
  }
  for (int i = 0; i < max_iter && hi - lo > tol * std::min(Real(1), hi); ++i) {
    // geometric midpoint while the bracket spans decades, so roots near 0
    // are reached within the iteration budget
    const Real mid = (lo > 0 && hi > 4 * lo) ? std::sqrt(lo * hi) : (lo + hi) / 2;
    const Real fm = k.log_g(mid) - log_c;
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace symstable::detail
