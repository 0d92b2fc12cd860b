#pragma once

// Symmetric stable density, its x- and alpha-derivatives, and the
// location/scale derivative algebra built on them.

#include <array>

#include "symstable/params.hpp"

namespace symstable {

struct EvalOutput {
  double value = 0.0;
  EvalMethod method;
  AccuracyClass accuracy = AccuracyClass::Full;
};

/// Standard density quantity (mu = 0, sigma = 1) at z. Throws
/// UnsupportedParameter for alpha < 0.1.
EvalOutput evaluate_standard(Quantity q, double z, double alpha);

/// The standard quantity from representation `m` regardless of the dispatch
/// tables, without the density sanity fallback. For auditing branch seams.
EvalOutput evaluate_as(Quantity q, double z, double alpha, const EvalMethod& m);

/// Quantities in x for a general (mu, sigma, alpha); derivatives are with
/// respect to x (dx, dxdx) or alpha (dalpha, dalpha2) at fixed mu, sigma.
EvalOutput pdf(double x, const StableParams& p);
EvalOutput pdf_dx(double x, const StableParams& p);
EvalOutput pdf_dxdx(double x, const StableParams& p);
EvalOutput pdf_dalpha(double x, const StableParams& p);
EvalOutput pdf_dalpha2(double x, const StableParams& p);

double pdf_dmu(double x, const StableParams& p);
double pdf_dmu2(double x, const StableParams& p);
double pdf_dsigma(double x, const StableParams& p);
double pdf_dsigma2(double x, const StableParams& p);

/// Parameter order (mu, sigma, alpha).
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct GradHess {
  double f = 0.0;
  Vec3 grad{};  // df/dmu, df/dsigma, df/dalpha
  Mat3 hess{};  // second partials of f
  // true where an entry is a finite difference of analytic first
  // derivatives: (mu, alpha) and (sigma, alpha)
  std::array<std::array<bool, 3>, 3> finite_difference{};
};

/// grad / f
Vec3 score(double x, const StableParams& p);

GradHess grad_hess(double x, const StableParams& p);

/// Step used for the alpha finite differences of f'.
inline constexpr double kAlphaDiffStep = 1e-4;

}  // namespace symstable
