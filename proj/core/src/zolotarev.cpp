#include "zolotarev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "symstable/detail/gauss_kronrod.hpp"
#include "symstable/detail/kernel.hpp"
#include "symstable/integrand.hpp"

namespace symstable::detail {

namespace {

constexpr double kLogGCutoff = 60;  // g e^{-g} P(g) underflows beyond g = e^60
// Below this x the f' and f'' integrals cancel to O(x^2) of their absolute
// mass; the kernel then runs in long double.
constexpr double kExtendedBelow = 1e-2;

template <class Real>
constexpr Real kHalfPi = std::numbers::pi_v<Real> / 2;

// Root of log g(u) = log c by the Illinois variant of regula falsi in log u,
// bracketed on [lo, hi]. NaN when not bracketed.
template <class Real>
Real locate_level(const KernelT<Real>& k, Real log_c, Real lo, Real hi) {
  Real a = std::log(lo), b = std::log(hi);
  Real fa = k.log_g(lo) - log_c;
  Real fb = k.log_g(hi) - log_c;
  if (!std::isfinite(fa) && !std::isfinite(fb)) return NAN;
  if (std::isnan(fa) || std::isnan(fb) || (fa < 0) == (fb < 0)) return NAN;
  // infinite endpoint values are replaced by bisection steps
  int side = 0;
  for (int i = 0; i < 100; ++i) {
    Real c;
    if (std::isfinite(fa) && std::isfinite(fb)) {
      c = b - fb * (b - a) / (fb - fa);
      if (!(c > a && c < b)) c = (a + b) / 2;
    } else {
      c = (a + b) / 2;
    }
    const Real fc = k.log_g(std::exp(c)) - log_c;
    if (std::isnan(fc)) return NAN;
    if ((fc < 0) == (fb < 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa /= 2;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb /= 2;
      side = 1;
    }
    if (std::fabs(b - a) < 1e-9L || std::fabs(fc) < 1e-12L) break;
  }
  return std::exp((a + b) / 2);
}

template <class Real>
AngleVar choose_var(Real alpha, Real x) {
  // boundary layer of width ~ (2 - alpha) at phi = pi/2 needs psi
  if (alpha > Real(1.9)) return AngleVar::Psi;
  // The mass sits where g ~ 1; measure the angle from the nearer end.
  // g increases in phi for alpha < 1 and decreases for alpha > 1.
  const KernelT<Real> k(alpha, x, AngleVar::Phi);
  const Real lg = k.log_g(kHalfPi<Real> / 2);
  const bool level_below = alpha < 1 ? lg > 0 : lg < 0;
  return level_below ? AngleVar::Phi : AngleVar::Psi;
}

template <class Real>
std::vector<Real> breakpoints(const KernelT<Real>& k) {
  // small levels resolve the power-law flank g^{~1} where g << 1
  static constexpr double levels[] = {1e-15, 1e-12, 1e-9, 1e-6, 1e-3, 0.1, kGoldenLow, 1.0,
                                      2.0,   kGoldenHigh, 4.0, 10.0, 40.0};
  const Real lo = std::numeric_limits<Real>::min() * 1e10L;
  const Real hi = kHalfPi<Real> * (1 - 4 * std::numeric_limits<Real>::epsilon());
  std::vector<Real> pts{0, kHalfPi<Real>};
  for (double c : levels) {
    const Real u = locate_level(k, std::log(static_cast<Real>(c)), lo, hi);
    if (std::isfinite(u)) pts.push_back(u);
  }
  if (k.alpha > 1.9L && k.var == AngleVar::Psi) {
    // boundary layer of width ~ (2 - alpha) at phi = pi/2
    const Real d = 2 - k.alpha;
    for (Real s : {d / 10, d, 10 * d, 100 * d}) {
      if (s < kHalfPi<Real>) pts.push_back(s);
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Real> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] > out.back() * (1 + 1e-12L) + std::numeric_limits<Real>::min()) {
      out.push_back(pts[i]);
    }
  }
  out.back() = kHalfPi<Real>;
  return out;
}

void validate(double x, double alpha) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("integral branch needs x > 0");
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw std::invalid_argument("integral branch needs alpha in (0, 2), alpha != 1");
  }
}

GkSettings settings(const QuadSpec& s) { return {s.rel_tol, s.abs_tol, s.max_subdivisions}; }

// Integrates fn over the angular partition pts = {0, u1, ..., pi/2} in the
// variable s: u = u1 (1 + s) on [-1, 0] and u = u1 e^s beyond, so power-law
// flanks spanning many decades of u are smooth in s.
template <class Real, std::size_t N, class F>
GkResult<Real, N> integrate_angles(F& fn, const std::vector<Real>& pts, const GkSettings& gs) {
  const Real u1 = pts[1];
  std::vector<Real> sp{-1, 0};
  for (std::size_t i = 2; i < pts.size(); ++i) sp.push_back(std::log(pts[i] / u1));
  auto mapped = [&](Real sv) -> std::array<Real, N> {
    const Real u = sv < 0 ? u1 * (1 + sv) : u1 * std::exp(sv);
    const Real jac = sv < 0 ? u1 : u;
    auto v = fn(u);
    for (auto& c : v) c *= jac;
    return v;
  };
  return integrate_partition<Real, N>(mapped, std::span<const Real>(sp), gs);
}

// log g carries an absolute error ~ eps |beta| |log x|, amplified near alpha = 1.
template <class Real>
GkSettings settings_for(const QuadSpec& s, const KernelT<Real>& k) {
  GkSettings gs = settings(s);
  gs.roundoff_factor *= 1.0 + std::fabs(static_cast<double>(k.beta));
  return gs;
}

template <class Real>
Real prefactor(Quantity q, Real alpha, Real x) {
  const Real c0 = alpha / (std::numbers::pi_v<Real> * std::fabs(alpha - 1));
  switch (q) {
    case Quantity::Dx: return c0 / (x * x);
    case Quantity::Dxdx: return c0 / (x * x * x);
    default: return c0 / x;
  }
}

// Bracket P(g, h) multiplying g e^{-g} for each quantity.
template <Quantity Q, class Real>
Real weight(const KernelT<Real>& k, const Trig<Real>& t, Real gv) {
  const Real a = k.alpha, b = k.beta;
  if constexpr (Q == Quantity::F) {
    return 1;
  } else if constexpr (Q == Quantity::Dx) {
    return -1 + b * (1 - gv);
  } else if constexpr (Q == Quantity::Dxdx) {
    return 2 - 3 * b * (1 - gv) + b * b * (1 - 3 * gv + gv * gv);
  } else if constexpr (Q == Quantity::Dalpha) {
    const Real h = k.h1(t) + k.h2(t) + k.h3(t);
    return 1 / (a * (1 - a)) - h * (1 - gv);
  } else {
    const Real h1 = k.h1(t), h2 = k.h2(t), h3 = k.h3(t);
    const Real h = h1 + h2 + h3;
    return 2 / (a * (1 - a) * (1 - a)) +
           2 / (a * (a - 1)) * ((1 + a) * h1 + 2 * h2 + h3) * (1 - gv) +
           (gv * gv - 3 * gv + 1) * h * h + k.h_alpha_rest(t) * (1 - gv);
  }
}

template <Quantity Q, class Real>
ZolValue run(double x, double alpha, const QuadSpec& spec) {
  const Real a = alpha, xx = x;
  const KernelT<Real> k(a, xx, choose_var(a, xx));
  const auto pts = breakpoints(k);
  auto fn = [&](Real u) -> std::array<Real, 1> {
    const auto t = k.trig(u);
    const Real lg = k.log_g(t);
    if (!(lg < kLogGCutoff)) return {0};
    const Real gv = std::exp(lg);
    const Real e = std::exp(lg - gv);
    if (e == 0) return {0};
    return {e * weight<Q, Real>(k, t, gv)};
  };
  const auto r = integrate_angles<Real, 1>(fn, pts, settings_for(spec, k));
  const Real pf = prefactor<Real>(Q, a, xx);
  return {static_cast<double>(pf * r.value[0]), static_cast<double>(pf * r.error[0]),
          r.converged || r.roundoff_limited, r.evaluations};
}

}  // namespace

QuadSpec zol_default_spec() { return {1e-11, 1e-300, 200}; }

ZolValue zol_integral(Quantity q, double x, double alpha, const QuadSpec& spec) {
  validate(x, alpha);
  const bool ext = x < kExtendedBelow;
  using LD = long double;
  switch (q) {
    case Quantity::F: return run<Quantity::F, double>(x, alpha, spec);
    case Quantity::Dx:
      return ext ? run<Quantity::Dx, LD>(x, alpha, spec) : run<Quantity::Dx, double>(x, alpha, spec);
    case Quantity::Dxdx:
      return ext ? run<Quantity::Dxdx, LD>(x, alpha, spec)
                 : run<Quantity::Dxdx, double>(x, alpha, spec);
    case Quantity::Dalpha: return run<Quantity::Dalpha, double>(x, alpha, spec);
    case Quantity::Dalpha2: return run<Quantity::Dalpha2, double>(x, alpha, spec);
  }
  throw std::invalid_argument("unknown quantity");
}

namespace {

template <class Real>
std::array<ZolValue, 3> run3(double x, double alpha, const QuadSpec& spec) {
  const Real a = alpha, xx = x;
  const KernelT<Real> k(a, xx, choose_var(a, xx));
  const auto pts = breakpoints(k);
  auto fn = [&](Real u) -> std::array<Real, 3> {
    const auto t = k.trig(u);
    const Real lg = k.log_g(t);
    if (!(lg < kLogGCutoff)) return {0, 0, 0};
    const Real gv = std::exp(lg);
    const Real e = std::exp(lg - gv);
    if (e == 0) return {0, 0, 0};
    return {e, e * weight<Quantity::Dx, Real>(k, t, gv),
            e * weight<Quantity::Dalpha, Real>(k, t, gv)};
  };
  const auto r = integrate_angles<Real, 3>(fn, pts, settings_for(spec, k));
  std::array<ZolValue, 3> out;
  const Quantity qs[3] = {Quantity::F, Quantity::Dx, Quantity::Dalpha};
  for (int i = 0; i < 3; ++i) {
    const Real pf = prefactor<Real>(qs[i], a, xx);
    out[i] = {static_cast<double>(pf * r.value[i]), static_cast<double>(pf * r.error[i]),
              r.converged || r.roundoff_limited, r.evaluations};
  }
  return out;
}

}  // namespace

std::array<ZolValue, 3> zol_f_dx_dalpha(double x, double alpha, const QuadSpec& spec) {
  validate(x, alpha);
  return x < kExtendedBelow ? run3<long double>(x, alpha, spec) : run3<double>(x, alpha, spec);
}

}  // namespace symstable::detail
