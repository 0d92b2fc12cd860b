#pragma once

// Region tables selecting the representation for each quantity, one row per
// alpha interval. A row lists an optional zero-side series (k terms for
// x below a threshold), an optional tail series (k terms for x above a
// threshold) and the representation used in between.

#include <span>

#include "symstable/params.hpp"

namespace symstable {

struct DispatchRow {
  enum class Middle { Integral, CauchyTaylor, ClosedForm, GaussBoundary };

  double alpha_lo;
  double alpha_hi;
  bool lo_inclusive;
  bool hi_inclusive;
  Middle middle;
  int zero_k;           // 0: no zero-side series
  double zero_x;
  bool zero_inclusive;  // x <= zero_x rather than x < zero_x
  int tail_k;           // 0: no tail series
  double tail_x;        // tail for x > tail_x; NaN means 10^{3/(1+alpha)}

  bool contains(double alpha) const;
};

/// Rows in lookup order: point rows (alpha = 1, alpha = 2) precede intervals.
std::span<const DispatchRow> dispatch_table(Quantity q);

/// The x > tail threshold of the standard rows.
double standard_tail_threshold(double alpha);

/// Row governing alpha. Alphas in [0.1, lowest tabulated alpha) fall back to
/// the first interval row. Throws UnsupportedParameter below 0.1.
const DispatchRow& dispatch_row(Quantity q, double alpha);

/// Representation for |x| at alpha according to the tables.
EvalMethod choose_method(Quantity q, double abs_x, double alpha);

}  // namespace symstable
