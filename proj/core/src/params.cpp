#include "symstable/params.hpp"

#include <cmath>

namespace symstable {

StableParams::StableParams(double mu, double sigma, double alpha)
    : mu_(mu), sigma_(sigma), alpha_(alpha) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(alpha)) {
    throw std::invalid_argument("stable parameters must be finite");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("sigma must be positive");
  }
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("alpha must lie in (0, 2]");
  }
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::F: return "f";
    case Quantity::Dx: return "df_dx";
    case Quantity::Dxdx: return "d2f_dx2";
    case Quantity::Dalpha: return "df_dalpha";
    case Quantity::Dalpha2: return "d2f_dalpha2";
  }
  return "?";
}

std::string to_string(const EvalMethod& m) {
  using K = EvalMethod::Kind;
  switch (m.kind) {
    case K::IntegralRep: return "integral";
    case K::SeriesZero: return "series_zero(k=" + std::to_string(m.terms) + ")";
    case K::SeriesTail: return "series_tail(k=" + std::to_string(m.terms) + ")";
    case K::CauchyTaylor: return "cauchy_taylor";
    case K::GaussBoundary: return "gauss_boundary";
    case K::ClosedForm: return "closed_form";
  }
  return "?";
}

std::string to_string(AccuracyClass a) {
  switch (a) {
    case AccuracyClass::Full: return "full";
    case AccuracyClass::Degraded: return "degraded";
    case AccuracyClass::Unsupported: return "unsupported";
  }
  return "?";
}

StandardPoint standardize(double x, const StableParams& p) {
  return {(x - p.mu()) / p.sigma(), p.alpha()};
}

std::pair<double, bool> reduce_by_symmetry(double z) {
  return {std::fabs(z), z < 0.0};
}

AccuracyClass accuracy_class(Quantity q, double alpha) {
  if (alpha < kDensityAlphaFloor) return AccuracyClass::Unsupported;
  if (q == Quantity::F) return AccuracyClass::Full;
  if (alpha < kDerivativeAlphaFloor) return AccuracyClass::Degraded;
  return AccuracyClass::Full;
}

}  // namespace symstable
