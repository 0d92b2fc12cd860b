#include "symstable/integrand.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "symstable/detail/kernel.hpp"

namespace symstable {

namespace {

using LD = long double;
constexpr double kMargin = 1e-12;

detail::KernelT<LD> make(const Kernel& k) {
  return {static_cast<LD>(k.alpha()), static_cast<LD>(k.x()), detail::AngleVar::Phi};
}

bool is_target(double c) {
  for (double t : {1.0, kGoldenLow, kGoldenHigh, 2.0, 4.0}) {
    if (std::fabs(c - t) <= 1e-15 * t) return true;
  }
  return false;
}

}  // namespace

Kernel::Kernel(double alpha, double x) : alpha_(alpha), x_(x), beta_(alpha / (alpha - 1.0)) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    throw std::invalid_argument("kernel requires alpha in (0, 2] and alpha != 1");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("kernel requires finite x > 0");
  }
}

double g(const Kernel& k, double phi) {
  const auto kt = make(k);
  return static_cast<double>(std::exp(kt.log_g(static_cast<LD>(phi))));
}

HComponents h_components(const Kernel& k, double phi) {
  const auto kt = make(k);
  const auto t = kt.trig(static_cast<LD>(phi));
  return {static_cast<double>(kt.h1(t)), static_cast<double>(kt.h2(t)),
          static_cast<double>(kt.h3(t))};
}

double g_alpha(const Kernel& k, double phi) {
  const auto kt = make(k);
  const auto t = kt.trig(static_cast<LD>(phi));
  const LD gv = std::exp(kt.log_g(t));
  return static_cast<double>(-gv * (kt.h1(t) + kt.h2(t) + kt.h3(t)));
}

std::optional<double> solve_g(const Kernel& k, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("solve_g requires c > 0");
  const auto kt = make(k);
  const LD lo = kMargin;
  const LD hi = std::numbers::pi_v<LD> / 2 - kMargin;
  const LD r = detail::solve_level(kt, std::log(static_cast<LD>(c)), lo, hi);
  if (std::isnan(r)) return std::nullopt;
  if (r == hi) return std::numbers::pi / 2;
  return static_cast<double>(r);
}

std::optional<double> SplitPoints::phi_at(double c) const {
  for (const auto& [level, phi] : entries) {
    if (level == c) return phi;
  }
  return std::nullopt;
}

SplitPoints split_points(const Kernel& k, std::span<const double> targets) {
  SplitPoints sp;
  for (double c : targets) {
    if (!is_target(c)) throw std::invalid_argument("unsupported split level");
    sp.entries.emplace_back(c, solve_g(k, c));
  }
  // g increasing (alpha < 1): larger level, larger angle; reversed for alpha > 1
  for (const auto& [ca, pa] : sp.entries) {
    for (const auto& [cb, pb] : sp.entries) {
      if (!pa || !pb || !(ca < cb)) continue;
      const bool ok = k.alpha() < 1.0 ? *pa <= *pb : *pa >= *pb;
      if (!ok) throw std::logic_error("split points violate monotone ordering");
    }
  }
  return sp;
}

}  // namespace symstable
