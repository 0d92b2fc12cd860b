#include "symstable/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "symstable/boundary.hpp"
#include "symstable/dispatch.hpp"
#include "symstable/series.hpp"
#include "triplet.hpp"
#include "zolotarev.hpp"

namespace symstable {

namespace {

using SeriesFn = SeriesResult (*)(double, double, int);

SeriesFn zero_series(Quantity q) {
  switch (q) {
    case Quantity::F: return f_series_zero;
    case Quantity::Dx: return fp_series_zero;
    case Quantity::Dxdx: return fpp_series_zero;
    case Quantity::Dalpha: return fa_series_zero;
    case Quantity::Dalpha2: return faa_series_zero;
  }
  return f_series_zero;
}

SeriesFn tail_series(Quantity q) {
  switch (q) {
    case Quantity::F: return f_series_tail;
    case Quantity::Dx: return fp_series_tail;
    case Quantity::Dxdx: return fpp_series_tail;
    case Quantity::Dalpha: return fa_series_tail;
    case Quantity::Dalpha2: return faa_series_tail;
  }
  return f_series_tail;
}

double cauchy_exact(Quantity q, double x) {
  const CauchyCoeffs c = cauchy_coeffs(x);
  switch (q) {
    case Quantity::F: return c.f1;
    case Quantity::Dx: return c.fp1;
    case Quantity::Dxdx: return c.fpp1;
    case Quantity::Dalpha: return c.fa1;
    case Quantity::Dalpha2: return c.faa1;
  }
  return c.f1;
}

double mode_value(double alpha) { return std::tgamma(1.0 + 1.0 / alpha) / std::numbers::pi; }

AccuracyClass accuracy_for(Quantity q, double alpha, const EvalMethod& m) {
  AccuracyClass a = accuracy_class(q, alpha);
  if (q == Quantity::Dalpha && alpha <= 0.2 && m.kind == EvalMethod::Kind::SeriesZero) {
    a = AccuracyClass::Full;
  }
  // raw integral near alpha = 2 for f', f'' (the tables offer nothing better)
  if (m.kind == EvalMethod::Kind::IntegralRep &&
      ((q == Quantity::Dx && alpha > 1.99999) || (q == Quantity::Dxdx && alpha > 1.999))) {
    a = AccuracyClass::Degraded;
  }
  return a;
}

// Series used when the integral for f fails the sanity checks.
EvalOutput density_fallback(double x, double alpha) {
  const DispatchRow& r = dispatch_row(Quantity::F, alpha);
  if (x < 1.0 && r.zero_k > 0) {
    return {f_series_zero(x, alpha, r.zero_k).value, EvalMethod::series_zero(r.zero_k),
            AccuracyClass::Degraded};
  }
  return {f_series_tail(x, alpha, 10).value, EvalMethod::series_tail(10),
          AccuracyClass::Degraded};
}

}  // namespace

namespace {

void check_args(Quantity q, double z, double alpha) {
  if (!std::isfinite(z)) throw std::invalid_argument("evaluation point must be finite");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in (0, 2]");
  if (accuracy_class(q, alpha) == AccuracyClass::Unsupported) {
    throw UnsupportedParameter("alpha below the supported floor for " + to_string(q));
  }
}

// An unconverged integral is still preferred to a series below this
// estimated relative error.
constexpr double kIntegralTrustRel = 1e-8;
// A zero series replaces an imprecise integral when its last term is below
// this fraction of its value.
constexpr double kSeriesTrustRel = 1e-10;

struct IntegralStatus {
  bool ok = true;       // converged, or error within kIntegralTrustRel
  bool precise = true;  // error within kIntegralTrustRel
};

// x >= 0; no sanity fallback, no sign restoration.
double raw_value(Quantity q, double x, double alpha, const EvalMethod& m,
                 IntegralStatus* status) {
  using K = EvalMethod::Kind;
  switch (m.kind) {
    case K::SeriesZero: return zero_series(q)(x, alpha, m.terms).value;
    case K::SeriesTail: return tail_series(q)(x, alpha, m.terms).value;
    case K::CauchyTaylor: return cauchy_taylor(x, alpha, q);
    case K::ClosedForm: return alpha == 1.0 ? cauchy_exact(q, x) : gaussian_closed(x, q);
    case K::GaussBoundary: return gaussian_tail_f(x, alpha);
    case K::IntegralRep: {
      if (x == 0.0) throw std::domain_error("the integral representation needs x != 0");
      const auto r = detail::zol_integral(q, x, alpha, detail::zol_default_spec());
      if (status) {
        status->precise = r.error <= kIntegralTrustRel * std::fabs(r.value);
        status->ok = r.converged || status->precise;
      }
      return r.value;
    }
  }
  throw std::invalid_argument("unknown evaluation method");
}

}  // namespace

EvalOutput evaluate_standard(Quantity q, double z, double alpha) {
  check_args(q, z, alpha);
  const auto [x, flipped] = reduce_by_symmetry(z);
  const EvalMethod m = choose_method(q, x, alpha);
  EvalOutput out{0.0, m, accuracy_for(q, alpha, m)};
  IntegralStatus status;
  out.value = raw_value(q, x, alpha, m, &status);
  if (m.kind == EvalMethod::Kind::IntegralRep && !status.precise) {
    // roundoff-limited integrals at small x: the row's zero series if it has converged
    const DispatchRow& r = dispatch_row(q, alpha);
    if (r.zero_k > 0 && x < 1.0) {
      const SeriesResult sr = zero_series(q)(x, alpha, r.zero_k);
      if (std::isfinite(sr.value) &&
          sr.last_term_magnitude <= kSeriesTrustRel * std::fabs(sr.value)) {
        const EvalMethod sm = EvalMethod::series_zero(r.zero_k);
        out = {sr.value, sm, accuracy_for(q, alpha, sm)};
        status = {};
      }
    }
  }
  if (q == Quantity::F && out.method.kind == EvalMethod::Kind::IntegralRep &&
      (!status.ok || out.value < 0.0 || out.value > mode_value(alpha))) {
    out = density_fallback(x, alpha);
  }
  if (q == Quantity::F && out.value < 0.0) out.value = 0.0;
  if (q == Quantity::Dx && flipped) out.value = -out.value;
  return out;
}

EvalOutput evaluate_as(Quantity q, double z, double alpha, const EvalMethod& m) {
  check_args(q, z, alpha);
  const auto [x, flipped] = reduce_by_symmetry(z);
  EvalOutput out{raw_value(q, x, alpha, m, nullptr), m, accuracy_for(q, alpha, m)};
  if (q == Quantity::Dx && flipped) out.value = -out.value;
  return out;
}

namespace detail {

Triplet standard_triplet(double x, double alpha) {
  using K = EvalMethod::Kind;
  const bool joint = choose_method(Quantity::F, x, alpha).kind == K::IntegralRep &&
                     choose_method(Quantity::Dx, x, alpha).kind == K::IntegralRep &&
                     choose_method(Quantity::Dalpha, x, alpha).kind == K::IntegralRep;
  if (joint) {
    const auto r = zol_f_dx_dalpha(x, alpha, zol_default_spec());
    const bool trusted =
        r[0].converged || r[0].error <= kIntegralTrustRel * std::fabs(r[0].value);
    if (trusted && r[0].value >= 0.0 && r[0].value <= mode_value(alpha)) {
      return {r[0].value, r[1].value, r[2].value};
    }
  }
  return {evaluate_standard(Quantity::F, x, alpha).value,
          evaluate_standard(Quantity::Dx, x, alpha).value,
          evaluate_standard(Quantity::Dalpha, x, alpha).value};
}

}  // namespace detail

namespace {

EvalOutput scaled(Quantity q, double x, const StableParams& p, int power) {
  const StandardPoint s = standardize(x, p);
  EvalOutput out = evaluate_standard(q, s.z, s.alpha);
  out.value /= std::pow(p.sigma(), power);
  return out;
}

}  // namespace

EvalOutput pdf(double x, const StableParams& p) { return scaled(Quantity::F, x, p, 1); }
EvalOutput pdf_dx(double x, const StableParams& p) { return scaled(Quantity::Dx, x, p, 2); }
EvalOutput pdf_dxdx(double x, const StableParams& p) { return scaled(Quantity::Dxdx, x, p, 3); }
EvalOutput pdf_dalpha(double x, const StableParams& p) {
  return scaled(Quantity::Dalpha, x, p, 1);
}
EvalOutput pdf_dalpha2(double x, const StableParams& p) {
  return scaled(Quantity::Dalpha2, x, p, 1);
}

double pdf_dmu(double x, const StableParams& p) { return -pdf_dx(x, p).value; }
double pdf_dmu2(double x, const StableParams& p) { return pdf_dxdx(x, p).value; }

double pdf_dsigma(double x, const StableParams& p) {
  const double z = standardize(x, p).z, a = p.alpha(), s = p.sigma();
  const double f = evaluate_standard(Quantity::F, z, a).value;
  const double fp = evaluate_standard(Quantity::Dx, z, a).value;
  return (-f - z * fp) / (s * s);
}

double pdf_dsigma2(double x, const StableParams& p) {
  const double z = standardize(x, p).z, a = p.alpha(), s = p.sigma();
  const double f = evaluate_standard(Quantity::F, z, a).value;
  const double fp = evaluate_standard(Quantity::Dx, z, a).value;
  const double fpp = evaluate_standard(Quantity::Dxdx, z, a).value;
  return (2 * f + 4 * z * fp + z * z * fpp) / (s * s * s);
}

Vec3 score(double x, const StableParams& p) {
  const double z = standardize(x, p).z, a = p.alpha(), s = p.sigma();
  const double f = evaluate_standard(Quantity::F, z, a).value;
  const double fp = evaluate_standard(Quantity::Dx, z, a).value;
  const double fa = evaluate_standard(Quantity::Dalpha, z, a).value;
  // (-f'/sigma^2, (-f - z f')/sigma^2, f_alpha/sigma) divided by f/sigma
  return {-fp / (s * f), (-f - z * fp) / (s * f), fa / f};
}

GradHess grad_hess(double x, const StableParams& p) {
  const double z = standardize(x, p).z, a = p.alpha(), s = p.sigma();
  const double f = evaluate_standard(Quantity::F, z, a).value;
  const double fp = evaluate_standard(Quantity::Dx, z, a).value;
  const double fpp = evaluate_standard(Quantity::Dxdx, z, a).value;
  const double fa = evaluate_standard(Quantity::Dalpha, z, a).value;
  const double faa = evaluate_standard(Quantity::Dalpha2, z, a).value;

  // d f'/d alpha by a central difference, one-sided at the ends of (0.1, 2]
  const double h = kAlphaDiffStep;
  const double lo = std::max(a - h, kDensityAlphaFloor), hi = std::min(a + h, 2.0);
  const double fpa = (evaluate_standard(Quantity::Dx, z, hi).value -
                      evaluate_standard(Quantity::Dx, z, lo).value) /
                     (hi - lo);

  const double s2 = s * s, s3 = s2 * s;
  GradHess gh;
  gh.f = f / s;
  gh.grad = {-fp / s2, (-f - z * fp) / s2, fa / s};
  gh.hess[0][0] = fpp / s3;
  gh.hess[1][1] = (2 * f + 4 * z * fp + z * z * fpp) / s3;
  gh.hess[2][2] = faa / s;
  gh.hess[0][1] = gh.hess[1][0] = (2 * fp + z * fpp) / s3;
  gh.hess[0][2] = gh.hess[2][0] = -fpa / s2;
  gh.hess[1][2] = gh.hess[2][1] = (-fa - z * fpa) / s2;
  gh.finite_difference[0][2] = gh.finite_difference[2][0] = true;
  gh.finite_difference[1][2] = gh.finite_difference[2][1] = true;
  return gh;
}

}  // namespace symstable
