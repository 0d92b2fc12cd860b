#pragma once

// Integral representations of f, f', f'', f_alpha, f_alpha_alpha for x > 0,
// alpha != 1, as single combined integrands over the Zolotarev angle.

#include <array>

#include "symstable/params.hpp"
#include "symstable/quadrature.hpp"

namespace symstable::detail {

struct ZolValue {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;  // includes the roundoff-limited case
  long evaluations = 0;
};

/// Internal tolerances used by the density dispatcher.
QuadSpec zol_default_spec();

/// Requires x > 0 and alpha in (0, 2), alpha != 1.
ZolValue zol_integral(Quantity q, double x, double alpha, const QuadSpec& spec);

/// f, f', f_alpha sharing one set of kernel evaluations.
std::array<ZolValue, 3> zol_f_dx_dalpha(double x, double alpha, const QuadSpec& spec);

}  // namespace symstable::detail
