#pragma once

// Parameter vocabulary shared by every evaluator: the validated (mu, sigma,
// alpha) triple, the standardized point, and the tags that record which
// representation produced a value and how far it can be trusted.

#include <stdexcept>
#include <string>
#include <utility>

namespace symstable {

/// Lowest alpha for which the density itself is evaluated.
inline constexpr double kDensityAlphaFloor = 0.1;
/// Lowest alpha for which derivative evaluators claim full accuracy.
inline constexpr double kDerivativeAlphaFloor = 0.2;

/// Thrown when a quantity is requested below its documented alpha floor.
class UnsupportedParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Location mu, scale sigma > 0 and characteristic exponent alpha in (0, 2].
class StableParams {
 public:
  /// Throws std::invalid_argument on non-finite input, sigma <= 0 or alpha
  /// outside (0, 2].
  StableParams(double mu, double sigma, double alpha);

  static StableParams standard(double alpha) { return {0.0, 1.0, alpha}; }

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double mu_;
  double sigma_;
  double alpha_;
};

struct StandardPoint {
  double z;
  double alpha;
};

/// The quantities of the standard density the library evaluates.
enum class Quantity { F, Dx, Dxdx, Dalpha, Dalpha2 };

std::string to_string(Quantity q);

/// Which representation produced a value.
struct EvalMethod {
  enum class Kind {
    IntegralRep,
    SeriesZero,
    SeriesTail,
    CauchyTaylor,
    GaussBoundary,
    ClosedForm
  };

  Kind kind = Kind::IntegralRep;
  int terms = 0;  // number of series terms; 0 for non-series kinds

  static EvalMethod integral() { return {Kind::IntegralRep, 0}; }
  static EvalMethod series_zero(int k) { return {Kind::SeriesZero, k}; }
  static EvalMethod series_tail(int k) { return {Kind::SeriesTail, k}; }
  static EvalMethod cauchy_taylor() { return {Kind::CauchyTaylor, 0}; }
  static EvalMethod gauss_boundary() { return {Kind::GaussBoundary, 0}; }
  static EvalMethod closed_form() { return {Kind::ClosedForm, 0}; }

  friend bool operator==(const EvalMethod&, const EvalMethod&) = default;
};

/// "integral", "series_zero(k=5)", "series_tail(k=10)", "cauchy_taylor",
/// "gauss_boundary" or "closed_form".
std::string to_string(const EvalMethod& m);

enum class AccuracyClass { Full, Degraded, Unsupported };

std::string to_string(AccuracyClass a);

StandardPoint standardize(double x, const StableParams& p);

/// Returns (|z|, z < 0). Odd quantities (f', f_alpha') change sign when the
/// flag is set; even ones do not.
std::pair<double, bool> reduce_by_symmetry(double z);

/// Accuracy promised for `q` at `alpha`, independent of x.
AccuracyClass accuracy_class(Quantity q, double alpha);

}  // namespace symstable
