#include "symstable/dispatch.hpp"

#include <cmath>
#include <limits>

namespace symstable {

namespace {

using M = DispatchRow::Middle;
constexpr double kStd = std::numeric_limits<double>::quiet_NaN();

constexpr DispatchRow point(double a, M m, int zk, double zx, bool zi, int tk, double tx) {
  return {a, a, true, true, m, zk, zx, zi, tk, tx};
}
constexpr DispatchRow row(double lo, double hi, bool lo_in, bool hi_in, M m, int zk, double zx,
                          bool zi, int tk, double tx) {
  return {lo, hi, lo_in, hi_in, m, zk, zx, zi, tk, tx};
}
constexpr DispatchRow regions(double lo, double hi, int zk, double zx, int tk = 10,
                              double tx = kStd) {
  return row(lo, hi, false, true, M::Integral, zk, zx, false, tk, tx);
}
constexpr DispatchRow taylor(double lo, double hi) {
  return row(lo, hi, false, true, M::CauchyTaylor, 0, 0.0, false, 0, 0.0);
}
constexpr DispatchRow cauchy_point() { return point(1.0, M::ClosedForm, 0, 0.0, false, 0, 0.0); }

const DispatchRow kF[] = {
    cauchy_point(),
    row(0.1, 0.2, true, true, M::Integral, 1, 1e-16, false, 10, kStd),
    regions(0.2, 0.5, 5, 1e-8),
    regions(0.5, 0.99, 5, 1e-5),
    taylor(0.99, 1.01),
    regions(1.01, 1.99999, 10, 1e-5),
    row(1.99999, 2.0, false, true, M::GaussBoundary, 85, 7.0, true, 0, 0.0),
};

const DispatchRow kDx[] = {
    cauchy_point(),
    point(2.0, M::ClosedForm, 85, 7.0, true, 0, 0.0),
    row(0.2, 0.25, true, true, M::Integral, 5, 1e-8, false, 10, kStd),
    regions(0.25, 0.3, 5, 1e-6),
    regions(0.3, 0.99, 5, 1e-5),
    taylor(0.99, 1.01),
    regions(1.01, 1.99999, 10, 1e-3),
    row(1.99999, 2.0, false, false, M::Integral, 10, 1e-3, false, 0, 0.0),
};

const DispatchRow kDxdx[] = {
    cauchy_point(),
    point(2.0, M::ClosedForm, 85, 7.0, true, 0, 0.0),
    row(0.2, 0.25, true, true, M::Integral, 5, 1e-8, false, 10, kStd),
    regions(0.25, 0.3, 5, 1e-6),
    regions(0.3, 0.9, 5, 1e-5),
    regions(0.9, 0.99, 5, 1e-3),
    taylor(0.99, 1.01),
    regions(1.01, 1.02, 10, 1e-3),
    regions(1.02, 1.999, 10, 1e-3),
    row(1.999, 2.0, false, false, M::Integral, 10, 1e-3, false, 0, 0.0),
};

const DispatchRow kDalpha[] = {
    cauchy_point(),
    row(0.1, 0.2, true, true, M::Integral, 1, 1e-16, false, 10, kStd),
    regions(0.2, 0.3, 5, 1e-7),
    regions(0.3, 0.5, 5, 1e-5),
    regions(0.5, 0.99, 5, 1e-5),
    taylor(0.99, 1.01),
    regions(1.01, 1.9999, 10, 1e-5),
    row(1.9999, 2.0, false, true, M::Integral, 85, 8.0, true, 20, 8.0),
};

// The integral loses f_alpha_alpha accuracy for 2 - alpha below ~1e-8; the
// alpha = 2 row extends down to there.
constexpr double kAlphaAlphaSeriesFrom = 2.0 - 1e-8;

const DispatchRow kDalpha2[] = {
    cauchy_point(),
    row(kAlphaAlphaSeriesFrom, 2.0, false, true, M::Integral, 85, 8.0, true, 20, 8.0),
    row(0.2, 0.3, true, true, M::Integral, 5, 2e-7, false, 10, kStd),
    regions(0.3, 0.5, 5, 1e-5),
    regions(0.5, 0.99, 5, 1e-3),
    taylor(0.99, 1.03),
    regions(1.03, 1.999, 10, 1e-3),
    row(1.999, kAlphaAlphaSeriesFrom, false, true, M::Integral, 10, 1e-3, false, 0, 0.0),
};

template <std::size_t N>
std::span<const DispatchRow> as_span(const DispatchRow (&t)[N]) {
  return {t, N};
}

}  // namespace

bool DispatchRow::contains(double alpha) const {
  const bool above = lo_inclusive ? alpha >= alpha_lo : alpha > alpha_lo;
  const bool below = hi_inclusive ? alpha <= alpha_hi : alpha < alpha_hi;
  return above && below;
}

std::span<const DispatchRow> dispatch_table(Quantity q) {
  switch (q) {
    case Quantity::F: return as_span(kF);
    case Quantity::Dx: return as_span(kDx);
    case Quantity::Dxdx: return as_span(kDxdx);
    case Quantity::Dalpha: return as_span(kDalpha);
    case Quantity::Dalpha2: return as_span(kDalpha2);
  }
  return {};
}

double standard_tail_threshold(double alpha) { return std::pow(10.0, 3.0 / (1.0 + alpha)); }

const DispatchRow& dispatch_row(Quantity q, double alpha) {
  if (!(alpha >= kDensityAlphaFloor && alpha <= 2.0)) {
    throw UnsupportedParameter("alpha below the supported floor for " + to_string(q));
  }
  const auto table = dispatch_table(q);
  for (const auto& r : table) {
    if (r.contains(alpha)) return r;
  }
  // degraded extension below the first tabulated interval
  for (const auto& r : table) {
    if (r.alpha_lo < r.alpha_hi) return r;
  }
  throw UnsupportedParameter("no dispatch row");
}

EvalMethod choose_method(Quantity q, double abs_x, double alpha) {
  const DispatchRow& r = dispatch_row(q, alpha);
  if (r.zero_k > 0 && (abs_x < r.zero_x || (r.zero_inclusive && abs_x <= r.zero_x))) {
    return EvalMethod::series_zero(r.zero_k);
  }
  if (r.tail_k > 0) {
    const double t = std::isnan(r.tail_x) ? standard_tail_threshold(alpha) : r.tail_x;
    if (abs_x > t) return EvalMethod::series_tail(r.tail_k);
  }
  switch (r.middle) {
    case M::Integral: return EvalMethod::integral();
    case M::CauchyTaylor: return EvalMethod::cauchy_taylor();
    case M::ClosedForm: return EvalMethod::closed_form();
    case M::GaussBoundary: return EvalMethod::gauss_boundary();
  }
  return EvalMethod::integral();
}

}  // namespace symstable
