#pragma once

// Zolotarev kernel g(phi; alpha, x) on (0, pi/2), its logarithmic
// decomposition h1 + h2 + h3 = -g_alpha / g, and level-set solving used to
// place quadrature breakpoints.

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace symstable {

/// Fixed (alpha, x) with alpha in (0, 2], alpha != 1, x > 0.
class Kernel {
 public:
  /// Throws std::invalid_argument outside the domain above.
  Kernel(double alpha, double x);

  double alpha() const noexcept { return alpha_; }
  double x() const noexcept { return x_; }
  double beta() const noexcept { return beta_; }  // alpha / (alpha - 1)
  int sign() const noexcept { return alpha_ > 1.0 ? 1 : -1; }  // sign(alpha - 1)

 private:
  double alpha_;
  double x_;
  double beta_;
};

/// g is increasing 0 -> inf in phi for alpha < 1, decreasing inf -> 0 for
/// alpha > 1 (alpha < 2). Returns +inf on overflow.
double g(const Kernel& k, double phi);

struct HComponents {
  double h1;
  double h2;
  double h3;
};

HComponents h_components(const Kernel& k, double phi);

/// -g (h1 + h2 + h3)
double g_alpha(const Kernel& k, double phi);

/// Angle in [1e-12, pi/2 - 1e-12] with g = c, or nullopt when g - c keeps one
/// sign there. A level attained at pi/2 itself reports pi/2.
std::optional<double> solve_g(const Kernel& k, double c);

/// The level values used for splitting.
inline constexpr double kGoldenLow = 0.38196601125010515;   // (3 - sqrt 5)/2
inline constexpr double kGoldenHigh = 2.6180339887498949;   // (3 + sqrt 5)/2

struct SplitPoints {
  std::vector<std::pair<double, std::optional<double>>> entries;  // (c, phi)

  std::optional<double> phi_at(double c) const;
};

/// Throws std::invalid_argument for a target outside
/// {1, (3-sqrt5)/2, (3+sqrt5)/2, 2, 4} and std::logic_error if the located
/// angles violate the monotone ordering.
SplitPoints split_points(const Kernel& k, std::span<const double> targets);

}  // namespace symstable
