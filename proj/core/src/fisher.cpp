#include "symstable/fisher.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "symstable/detail/gauss_kronrod.hpp"
#include "symstable/dispatch.hpp"
#include "symstable/series.hpp"
#include "triplet.hpp"
#include "zolotarev.hpp"

namespace symstable {

namespace {

constexpr double kNormalTaylorFrom = 7.0;

// Integrands (f'^2, (f + x f')^2, f_alpha^2, -(f + x f') f_alpha) / f.
using Entries = std::array<double, 4>;

Entries products(double x, const detail::Triplet& t) {
  if (!(t.f > 0.0)) return {0, 0, 0, 0};
  const double fs = t.f + x * t.fp;
  return {t.fp * t.fp / t.f, fs * fs / t.f, t.fa * t.fa / t.f, -fs * t.fa / t.f};
}

std::vector<double> seams(double alpha) {
  std::vector<double> s = {1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5,
                           1.0,   2.0,   5.0,  7.0,  8.0,  30.0, 100.0};
  for (Quantity q : {Quantity::F, Quantity::Dx, Quantity::Dalpha}) {
    const DispatchRow& r = dispatch_row(q, alpha);
    if (r.zero_k > 0) s.push_back(r.zero_x);
  }
  s.push_back(standard_tail_threshold(alpha));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

struct Integrated {
  Entries value;
  double max_err;
  bool converged;
};

// 2 int_0^inf of the entries: [0, 1] directly, [1, inf) through x = 1/t.
template <class Eval>
Integrated integrate_entries(Eval&& eval, const std::vector<double>& cuts) {
  const detail::GkSettings s{1e-9, 1e-12, 400};
  std::vector<double> near{0.0}, far_t;
  for (double c : cuts) {
    if (c < 1.0) near.push_back(c);
    if (c > 1.0) far_t.push_back(1.0 / c);
  }
  near.push_back(1.0);
  far_t.push_back(0.0);
  far_t.push_back(1.0);
  std::sort(far_t.begin(), far_t.end());

  auto a = detail::integrate_partition<double, 4>(eval, std::span<const double>(near), s);
  auto b = detail::integrate_partition<double, 4>(
      [&](double t) -> Entries {
        const double x = 1.0 / t;
        if (!std::isfinite(x)) return {0, 0, 0, 0};
        Entries e = eval(x);
        for (double& v : e) v /= t * t;
        return e;
      },
      std::span<const double>(far_t), s);
  Integrated out{};
  out.max_err = 0.0;
  for (int i = 0; i < 4; ++i) {
    out.value[i] = 2.0 * (a.value[i] + b.value[i]);
    out.max_err = std::max(out.max_err, 2.0 * (a.error[i] + b.error[i]));
  }
  out.converged = (a.converged || a.roundoff_limited) && (b.converged || b.roundoff_limited);
  return out;
}

}  // namespace

InfoMatrix info_matrix(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("alpha must lie in (0, 2]");
  if (alpha < kDerivativeAlphaFloor) {
    throw UnsupportedParameter("Fisher information needs alpha >= 0.2");
  }
  if (alpha == 2.0) {
    return {2.0, 0.5, 2.0, std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::quiet_NaN(), 0.0, true};
  }
  if (alpha == 1.0) return cauchy_info_analytic();
  const auto r = integrate_entries(
      [&](double x) { return products(x, detail::standard_triplet(x, alpha)); }, seams(alpha));
  return {alpha, r.value[0], r.value[1], r.value[2], r.value[3], r.max_err, r.converged};
}

InfoMatrix cauchy_info_analytic() {
  constexpr double g = std::numbers::egamma;
  constexpr double l2 = std::numbers::ln2;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double c = g + l2 - 1.0;
  return {1.0, 0.5, 0.5, (pi2 / 6.0 + c * c) / 2.0, (1.0 - g - l2) / 2.0, 0.0, true};
}

double ns_asymptote(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("ns_asymptote needs 1 < alpha < 2");
  const double d = 2.0 - alpha;
  return 1.0 / (4.0 * d * std::log(1.0 / d));
}

NearTwoInfo info_near_two(double alpha, int variant) {
  if (!(alpha > 1.999 && alpha < 2.0)) {
    throw std::domain_error("info_near_two needs alpha in (1.999, 2)");
  }
  if (variant != 1 && variant != 2) throw std::invalid_argument("variant must be 1 or 2");
  const double delta = 2.0 - alpha;
  if (delta < 1e-7) throw UnsupportedParameter("information below 2 - alpha = 1e-7 is unreliable");
  const double tail_from = standard_tail_threshold(alpha);

  auto eval = [&](double x) {
    detail::Triplet t = detail::standard_triplet(x, alpha);
    if (variant == 1 && x > kNormalTaylorFrom) {
      t.f = detail::gaussian_max_rule(x, alpha);
    } else if (variant == 2 && x > tail_from) {
      t.f = f_series_tail(x, alpha, 10).value;
    } else if (variant == 2 && x > kNormalTaylorFrom) {
      t.f = detail::zol_integral(Quantity::F, x, alpha, detail::zol_default_spec()).value;
    }
    return products(x, t);
  };
  auto cuts = seams(alpha);
  const auto r = integrate_entries(eval, cuts);
  return {r.value[2], r.value[3], delta < 1e-6 ? AccuracyClass::Degraded : AccuracyClass::Full};
}

}  // namespace symstable
