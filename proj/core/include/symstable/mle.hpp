#pragma once

// Maximum likelihood for (mu, sigma, alpha) with observed information, and
// the alpha-only simulation experiment at mu = 0, sigma = 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symstable/density.hpp"
#include "symstable/params.hpp"

namespace symstable {

/// Which of (mu, sigma, alpha) are estimated.
struct FreeParams {
  bool mu = true;
  bool sigma = true;
  bool alpha = true;

  bool operator[](int i) const { return i == 0 ? mu : i == 1 ? sigma : alpha; }
  int count() const { return int(mu) + int(sigma) + int(alpha); }
};

struct FitConfig {
  FreeParams free_params;
  std::optional<StableParams> init;  // nullopt: median, IQR/2, alpha = 1
  int max_iter = 100;
  double grad_tol = 1e-8;
  int std_error_variant = 2;  // falls back to 1 if variant 2 is not PD
};

struct FitResult {
  StableParams theta_hat{0.0, 1.0, 1.0};
  double loglik = 0.0;
  Mat3 obs_info_1{};  // zero outside the free block
  Mat3 obs_info_2{};
  Vec3 std_errors{};  // NaN for fixed parameters
  int iterations = 0;
  bool converged = false;
};

/// -sum log f; +inf when any density evaluation is unsupported.
double neg_loglik(std::span<const double> data, const StableParams& p);

/// Throws std::invalid_argument if data has fewer points than free parameters.
FitResult fit(std::span<const double> data, const FitConfig& config = {});

/// Variant 1: mean score outer product. Variant 2: variant 1 minus the mean
/// of (second partials of f) / f. Entries outside `which` are zero.
Mat3 observed_info(std::span<const double> data, const StableParams& p, int variant,
                   FreeParams which = {});

struct SimulationConfig {
  double alpha = 1.5;
  std::size_t n = 50;
  std::size_t reps = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SimulationResult {
  double alpha = 0.0;
  std::size_t n = 0;
  std::size_t reps = 0;
  double mean_alpha_hat = 0.0;
  double inv_var_scaled = 0.0;  // 1 / var(sqrt(n) (alpha_hat - alpha))
  double mean_info_1 = 0.0;     // observed alpha information at alpha_hat
  double var_info_1 = 0.0;
  double mean_info_2 = 0.0;
  double var_info_2 = 0.0;
  double exact_info = 0.0;      // Fisher I_alpha_alpha at the true alpha
  std::size_t nonconverged = 0;
  std::vector<double> alpha_hats;  // in replication order
};

/// Replication r draws from RngStream(seed).split(r); results do not depend
/// on the thread count.
SimulationResult simulate_alpha_mle(const SimulationConfig& config);

}  // namespace symstable
