#include "symstable/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "symstable/detail/gauss_kronrod.hpp"

namespace symstable {

namespace {

detail::GkSettings settings(const QuadSpec& s) {
  if (!(s.rel_tol > 0) || !(s.abs_tol > 0) || s.max_subdivisions < 1) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  return {s.rel_tol, s.abs_tol, s.max_subdivisions};
}

std::vector<double> make_partition(double a, double b, std::span<const double> bp) {
  if (!(a < b)) throw InvalidInterval("integration interval requires a < b");
  std::vector<double> pts{a};
  for (double p : bp) {
    if (!(p > pts.back() && p < b)) {
      throw InvalidInterval("breakpoints must be sorted and strictly interior");
    }
    pts.push_back(p);
  }
  pts.push_back(b);
  return pts;
}

template <class F>
QuadResult run(F&& f, const std::vector<double>& pts, const QuadSpec& spec) {
  auto r = detail::integrate_partition<double, 1>(
      [&](double t) { return std::array<double, 1>{f(t)}; }, std::span<const double>(pts),
      settings(spec));
  return {r.value[0], r.error[0], r.evaluations, r.converged};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& fn, double a, double b,
                     std::span<const double> breakpoints, const QuadSpec& spec) {
  return run(fn, make_partition(a, b, breakpoints), spec);
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& fn, double a,
                                   std::span<const double> breakpoints,
                                   const QuadSpec& spec) {
  if (!std::isfinite(a)) throw InvalidInterval("lower limit must be finite");
  std::vector<double> tb;
  for (auto it = breakpoints.rbegin(); it != breakpoints.rend(); ++it) {
    if (!(*it > a)) throw InvalidInterval("breakpoints must exceed the lower limit");
    tb.push_back(1.0 / (1.0 + (*it - a)));
  }
  if (!std::is_sorted(tb.begin(), tb.end())) {
    throw InvalidInterval("breakpoints must be sorted");
  }
  auto mapped = [&](double t) {
    const double x = a + (1.0 - t) / t;
    if (!std::isfinite(x)) return 0.0;
    return fn(x) / (t * t);
  };
  return run(mapped, make_partition(0.0, 1.0, tb), spec);
}

}  // namespace symstable
