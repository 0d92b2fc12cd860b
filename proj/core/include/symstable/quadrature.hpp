#pragma once

// Adaptive Gauss-Kronrod integration over finite intervals with breakpoints
// and over [a, inf) via t = 1/(1 + x - a).

#include <functional>
#include <span>
#include <stdexcept>

namespace symstable {

struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  // converged implies abs_error_estimate <= max(abs_tol, rel_tol |value|).
  bool converged = false;
};

/// Thrown for a >= b or malformed breakpoints.
class InvalidInterval : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Breakpoints must be sorted and strictly inside (a, b).
QuadResult integrate(const std::function<double(double)>& fn, double a, double b,
                     std::span<const double> breakpoints = {}, const QuadSpec& spec = {});

/// Breakpoints are x-values in (a, inf), sorted ascending.
QuadResult integrate_semi_infinite(const std::function<double(double)>& fn, double a,
                                   std::span<const double> breakpoints = {},
                                   const QuadSpec& spec = {});

}  // namespace symstable
