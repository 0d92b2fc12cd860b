#include "symstable/series.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#if SYMSTABLE_HAVE_QUADMATH
#include <quadmath.h>
#endif

#include "symstable/specfun.hpp"

namespace symstable {

namespace {

using LD = long double;
constexpr LD kPi = std::numbers::pi_v<LD>;

#if SYMSTABLE_HAVE_QUADMATH
using Wide = __float128;
inline Wide m_lgamma(Wide v) { return lgammaq(v); }
inline Wide m_exp(Wide v) { return expq(v); }
inline Wide m_log(Wide v) { return logq(v); }
inline Wide m_fabs(Wide v) { return fabsq(v); }
#else
using Wide = long double;
#endif
inline LD m_lgamma(LD v) { return std::lgamma(v); }
inline LD m_exp(LD v) { return std::exp(v); }
inline LD m_log(LD v) { return std::log(v); }
inline LD m_fabs(LD v) { return std::fabs(v); }

// Zero-side sums longer than this alternate through terms far larger than
// their sum (k = 85 at x up to 8) and run in Wide.
constexpr int kWideTerms = 40;

// Neumaier compensated accumulator.
template <class R>
struct AccumulatorT {
  R sum = 0, comp = 0, last = 0;
  int n = 0;
  void add(R t) {
    const R s = sum + t;
    if (m_fabs(sum) >= m_fabs(t)) {
      comp += (sum - s) + t;
    } else {
      comp += (t - s) + sum;
    }
    sum = s;
    last = t;
    ++n;
  }
  SeriesResult result(R scale) const {
    return {static_cast<double>(scale * (sum + comp)), n,
            static_cast<double>(m_fabs(scale * last))};
  }
};
using Accumulator = AccumulatorT<LD>;

void check(double x, double alpha, int k, bool tail) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("series: alpha outside (0, 2]");
  if (k < 1) throw std::domain_error("series: k must be positive");
  if (tail ? !(x > 0.0) : !(x >= 0.0)) {
    throw std::domain_error(tail ? "tail series: x must be > 0" : "zero series: x must be >= 0");
  }
}

// sin(pi t), cos(pi t) with the argument reduced by its nearest integer, so
// that sin(pi alpha k / 2) vanishes exactly at alpha = 2 and stays accurate
// relative to 2 - alpha nearby.
LD sinpi(LD t) {
  const LD n = std::nearbyint(t);
  const LD s = std::sin(kPi * (t - n));
  return std::fmod(n, LD(2)) == 0 ? s : -s;
}
LD cospi(LD t) {
  const LD n = std::nearbyint(t);
  const LD c = std::cos(kPi * (t - n));
  return std::fmod(n, LD(2)) == 0 ? c : -c;
}

LD sgn(int j) { return (j % 2 == 0) ? 1 : -1; }  // (-1)^j

// {digamma, trigamma}; the recurrence shift keeps the truncated asymptotic
// tail below the rounding of R.
template <class R>
std::array<R, 2> polygamma01(R x) {
  const R shift_to = sizeof(R) > sizeof(LD) ? 60 : 20;
  R d = 0, t = 0;
  while (x < shift_to) {
    d -= 1 / x;
    t += 1 / (x * x);
    x += 1;
  }
  const R r = 1 / (x * x);
  const R dt =
      r * (R(1) / 12 -
           r * (R(1) / 120 -
                r * (R(1) / 252 -
                     r * (R(1) / 240 -
                          r * (R(1) / 132 - r * (R(691) / 32760 - r * (R(1) / 12)))))));
  const R ts =
      R(1) / 6 -
      r * (R(1) / 30 -
           r * (R(1) / 42 -
                r * (R(1) / 30 - r * (R(5) / 66 - r * (R(691) / 2730 - r * (R(7) / 6))))));
  return {d + m_log(x) - 1 / (2 * x) - dt, t + 1 / x + r / 2 + r * ts / x};
}

}  // namespace

template <class R>
SeriesResult f_zero_impl(double x, double alpha, int k) {
  const R a = alpha;
  const bool at0 = x == 0.0;
  const R lx = at0 ? R(0) : m_log(R(x));
  AccumulatorT<R> acc;
  for (int j = 0; j < k; ++j) {
    const R lg = m_lgamma((2 * j + 1) / a + 1) - m_lgamma(R(2 * j + 2));
    if (at0 && j > 0) break;
    acc.add(R(sgn(j)) * m_exp(lg + R(2 * j) * lx));
  }
  return acc.result(R(1) / R(kPi));
}

SeriesResult f_series_zero(double x, double alpha, int k) {
  check(x, alpha, k, false);
  return k > kWideTerms ? f_zero_impl<Wide>(x, alpha, k) : f_zero_impl<LD>(x, alpha, k);
}

SeriesResult f_series_tail(double x, double alpha, int k) {
  check(x, alpha, k, true);
  const LD a = alpha, lx = std::log(static_cast<LD>(x));
  Accumulator acc;
  for (int j = 1; j <= k; ++j) {
    const LD lg = std::lgamma(j * a + 1) - std::lgamma(LD(j + 1)) - (j * a + 1) * lx;
    acc.add(sgn(j - 1) * sinpi(a * j / 2) * std::exp(lg));
  }
  return acc.result(1 / kPi);
}

template <class R>
SeriesResult fp_zero_impl(double x, double alpha, int k) {
  const R a = alpha;
  AccumulatorT<R> acc;
  if (x == 0.0) {
    acc.add(R(0));
    return acc.result(1);
  }
  const R lx = m_log(R(x));
  for (int j = 1; j <= k; ++j) {
    const R lg = m_lgamma((2 * j + 1) / a) - m_lgamma(R(2 * j));
    acc.add(R(sgn(j)) * m_exp(lg + R(2 * j - 1) * lx));
  }
  return acc.result(R(1) / (R(kPi) * a));
}

SeriesResult fp_series_zero(double x, double alpha, int k) {
  check(x, alpha, k, false);
  return k > kWideTerms ? fp_zero_impl<Wide>(x, alpha, k) : fp_zero_impl<LD>(x, alpha, k);
}

SeriesResult fp_series_tail(double x, double alpha, int k) {
  check(x, alpha, k, true);
  const LD a = alpha, lx = std::log(static_cast<LD>(x));
  Accumulator acc;
  for (int j = 1; j <= k; ++j) {
    const LD lg = std::lgamma(j * a + 2) - std::lgamma(LD(j + 1)) - (j * a + 2) * lx;
    acc.add(sgn(j) * sinpi(a * j / 2) * std::exp(lg));
  }
  return acc.result(1 / kPi);
}

template <class R>
SeriesResult fpp_zero_impl(double x, double alpha, int k) {
  const R a = alpha;
  const bool at0 = x == 0.0;
  const R lx = at0 ? R(0) : m_log(R(x));
  AccumulatorT<R> acc;
  for (int j = 1; j <= k; ++j) {
    if (at0 && j > 1) break;
    const R lg = m_lgamma((2 * j + 1) / a) - m_lgamma(R(2 * j - 1));
    acc.add(R(sgn(j)) * m_exp(lg + R(2 * j - 2) * lx));
  }
  return acc.result(R(1) / (R(kPi) * a));
}

SeriesResult fpp_series_zero(double x, double alpha, int k) {
  check(x, alpha, k, false);
  return k > kWideTerms ? fpp_zero_impl<Wide>(x, alpha, k) : fpp_zero_impl<LD>(x, alpha, k);
}

SeriesResult fpp_series_tail(double x, double alpha, int k) {
  check(x, alpha, k, true);
  const LD a = alpha, lx = std::log(static_cast<LD>(x));
  Accumulator acc;
  for (int j = 1; j <= k; ++j) {
    const LD lg = std::lgamma(j * a + 3) - std::lgamma(LD(j + 1)) - (j * a + 3) * lx;
    acc.add(sgn(j - 1) * sinpi(a * j / 2) * std::exp(lg));
  }
  return acc.result(1 / kPi);
}

template <class R>
SeriesResult fa_zero_impl(double x, double alpha, int k) {
  const R a = alpha;
  const bool at0 = x == 0.0;
  const R lx = at0 ? R(0) : m_log(R(x));
  AccumulatorT<R> acc;
  for (int j = 0; j < k; ++j) {
    if (at0 && j > 0) break;
    const R nu = (2 * j + 1) / a + 1;
    const R lg = m_lgamma(nu) - m_lgamma(R(2 * j + 1)) + R(2 * j) * lx;
    acc.add(R(sgn(j)) * polygamma01(nu)[0] * m_exp(lg));
  }
  return acc.result(R(-1) / (R(kPi) * a * a));
}

SeriesResult fa_series_zero(double x, double alpha, int k) {
  check(x, alpha, k, false);
  return k > kWideTerms ? fa_zero_impl<Wide>(x, alpha, k) : fa_zero_impl<LD>(x, alpha, k);
}

SeriesResult fa_series_tail(double x, double alpha, int k) {
  check(x, alpha, k, true);
  const LD a = alpha, lx = std::log(static_cast<LD>(x));
  Accumulator acc;
  for (int j = 1; j <= k; ++j) {
    const LD nu = j * a + 1;
    const LD mag = std::exp(std::lgamma(nu) - std::lgamma(LD(j)) - (j * a + 1) * lx);
    const LD s = sinpi(a * j / 2), c = cospi(a * j / 2);
    const LD psi = detail::digamma(nu);
    acc.add(sgn(j - 1) * mag * (psi * s + kPi / 2 * c - lx * s));
  }
  return acc.result(1 / kPi);
}

template <class R>
SeriesResult faa_zero_impl(double x, double alpha, int k) {
  const R a = alpha;
  const bool at0 = x == 0.0;
  const R lx = at0 ? R(0) : m_log(R(x));
  AccumulatorT<R> acc;
  for (int j = 0; j < k; ++j) {
    if (at0 && j > 0) break;
    const R nu = (2 * j + 1) / a + 1;
    const auto pg = polygamma01(nu);
    const R mag = m_exp(m_lgamma(nu) - m_lgamma(R(2 * j + 1)) + R(2 * j) * lx);
    // 2/(pi a^3) Gamma' + (2j+1)/(pi a^4) Gamma''
    acc.add(R(sgn(j)) * mag * (2 * a * pg[0] + R(2 * j + 1) * (pg[0] * pg[0] + pg[1])));
  }
  return acc.result(R(1) / (R(kPi) * a * a * a * a));
}

SeriesResult faa_series_zero(double x, double alpha, int k) {
  check(x, alpha, k, false);
  return k > kWideTerms ? faa_zero_impl<Wide>(x, alpha, k) : faa_zero_impl<LD>(x, alpha, k);
}

SeriesResult faa_series_tail(double x, double alpha, int k) {
  check(x, alpha, k, true);
  const LD a = alpha, lx = std::log(static_cast<LD>(x));
  Accumulator acc;
  for (int j = 1; j <= k; ++j) {
    const LD nu = j * a + 1;
    const auto d = detail::log_gamma_derivs(nu);
    const LD mag = j * std::exp(d.log_gamma - std::lgamma(LD(j)) - (j * a + 1) * lx);
    const LD s = sinpi(a * j / 2), c = cospi(a * j / 2);
    const LD b1 = kPi / 2 * c - lx * s;
    const LD b2 = (lx * lx - kPi * kPi / 4) * s - kPi * lx * c;
    // Gamma''/Gamma s (-1)^{k-1} - 2 psi b1 (-1)^k + b2 (-1)^{k-1}
    acc.add(sgn(j - 1) * mag * (d.psi2_plus_trigamma * s + 2 * d.psi * b1 + b2));
  }
  return acc.result(1 / kPi);
}

}  // namespace symstable
