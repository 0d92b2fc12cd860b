#pragma once

// f, f' and f_alpha at one standardized point, sharing the angular
// quadrature when all three fall in the integral branch.

namespace symstable::detail {

struct Triplet {
  double f;
  double fp;
  double fa;
};

/// x >= 0, alpha in [0.1, 2].
Triplet standard_triplet(double x, double alpha);

/// Density by the near-normal rule max(integral, f(x;2) + heavy-tail term),
/// for any alpha in (1, 2] and x > 0.
double gaussian_max_rule(double x, double alpha);

}  // namespace symstable::detail
