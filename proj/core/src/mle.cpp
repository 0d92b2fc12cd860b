#include "symstable/mle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "symstable/fisher.hpp"
#include "symstable/sampling.hpp"

namespace symstable {

namespace {

constexpr double kAlphaLo = kDerivativeAlphaFloor;
constexpr double kAlphaSpan = 2.0 - kDerivativeAlphaFloor;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kProbeStep = 1e-5;
constexpr double kProbeGain = 1e-8;  // per observation

struct PointDerivs {
  double f = 0.0;
  Vec3 grad{};
  Mat3 hess{};
};

// Only the blocks touched by `which` are filled.
PointDerivs point_derivs(double x, const StableParams& p, FreeParams which) {
  PointDerivs d;
  if (which.alpha && !which.mu && !which.sigma) {
    d.f = pdf(x, p).value;
    d.grad[2] = pdf_dalpha(x, p).value;
    d.hess[2][2] = pdf_dalpha2(x, p).value;
    return d;
  }
  if (!which.alpha) {
    const double s = p.sigma();
    const double z = (x - p.mu()) / s;
    const StableParams std_p = StableParams::standard(p.alpha());
    const double f0 = pdf(z, std_p).value;
    const double f1 = pdf_dx(z, std_p).value;
    const double f2 = pdf_dxdx(z, std_p).value;
    const double s2 = s * s, s3 = s2 * s;
    d.f = f0 / s;
    d.grad[0] = -f1 / s2;
    d.grad[1] = -(f0 + z * f1) / s2;
    d.hess[0][0] = f2 / s3;
    d.hess[1][1] = (2.0 * f0 + 4.0 * z * f1 + z * z * f2) / s3;
    d.hess[0][1] = d.hess[1][0] = (2.0 * f1 + z * f2) / s3;
    return d;
  }
  const GradHess gh = grad_hess(x, p);
  d.f = gh.f;
  d.grad = gh.grad;
  d.hess = gh.hess;
  return d;
}

std::vector<int> free_indices(FreeParams which) {
  std::vector<int> idx;
  for (int i = 0; i < 3; ++i) {
    if (which[i]) idx.push_back(i);
  }
  return idx;
}

// Cholesky of the leading k x k block of a symmetric matrix; false unless PD.
bool cholesky(Mat3& a, int k) {
  for (int j = 0; j < k; ++j) {
    double d = a[j][j];
    for (int m = 0; m < j; ++m) d -= a[j][m] * a[j][m];
    if (!(d > 0.0)) return false;
    a[j][j] = std::sqrt(d);
    for (int i = j + 1; i < k; ++i) {
      double v = a[i][j];
      for (int m = 0; m < j; ++m) v -= a[i][m] * a[j][m];
      a[i][j] = v / a[j][j];
    }
  }
  return true;
}

Vec3 cholesky_solve(const Mat3& l, Vec3 b, int k) {
  for (int i = 0; i < k; ++i) {
    for (int m = 0; m < i; ++m) b[i] -= l[i][m] * b[m];
    b[i] /= l[i][i];
  }
  for (int i = k - 1; i >= 0; --i) {
    for (int m = i + 1; m < k; ++m) b[i] -= l[m][i] * b[m];
    b[i] /= l[i][i];
  }
  return b;
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

struct Coords {
  Vec3 w{};
  FreeParams which;
  StableParams fixed;

  StableParams params() const {
    const double mu = which.mu ? w[0] : fixed.mu();
    const double sigma = which.sigma ? std::exp(w[1]) : fixed.sigma();
    const double alpha = which.alpha ? kAlphaLo + kAlphaSpan * logistic(w[2]) : fixed.alpha();
    return {mu, sigma, alpha};
  }
};

double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * double(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - double(i)) * (v[i + 1] - v[i]);
}

StableParams auto_init(std::span<const double> data) {
  std::vector<double> v(data.begin(), data.end());
  std::sort(v.begin(), v.end());
  const double med = quantile_sorted(v, 0.5);
  double half_iqr = (quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25)) / 2.0;
  if (!(half_iqr > 0.0)) half_iqr = 1.0;
  return {med, half_iqr, 1.0};
}

struct Accumulated {
  Vec3 score_sum{};
  Mat3 outer_sum{};
  Mat3 hess_over_f_sum{};
  bool ok = true;
};

Accumulated accumulate(std::span<const double> data, const StableParams& p, FreeParams which) {
  Accumulated acc;
  const auto idx = free_indices(which);
  for (double x : data) {
    const PointDerivs d = point_derivs(x, p, which);
    if (!(d.f > 0.0) || !std::isfinite(d.f)) {
      acc.ok = false;
      continue;
    }
    Vec3 s{};
    for (int i : idx) s[i] = d.grad[i] / d.f;
    for (int i : idx) {
      acc.score_sum[i] += s[i];
      for (int j : idx) {
        acc.outer_sum[i][j] += s[i] * s[j];
        acc.hess_over_f_sum[i][j] += d.hess[i][j] / d.f;
      }
    }
  }
  return acc;
}

}  // namespace

double neg_loglik(std::span<const double> data, const StableParams& p) {
  if (data.empty()) throw std::invalid_argument("neg_loglik needs at least one point");
  double s = 0.0;
  try {
    for (double x : data) {
      const double f = pdf(x, p).value;
      if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
      s -= std::log(f);
    }
  } catch (const UnsupportedParameter&) {
    return std::numeric_limits<double>::infinity();
  }
  return s;
}

Mat3 observed_info(std::span<const double> data, const StableParams& p, int variant,
                   FreeParams which) {
  if (variant != 1 && variant != 2) throw std::invalid_argument("variant must be 1 or 2");
  if (data.empty()) throw std::invalid_argument("observed_info needs data");
  if (p.alpha() < kDerivativeAlphaFloor) {
    throw UnsupportedParameter("observed information needs alpha >= 0.2");
  }
  const Accumulated acc = accumulate(data, p, which);
  const double n = double(data.size());
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[i][j] = acc.outer_sum[i][j] / n;
      if (variant == 2) out[i][j] -= acc.hess_over_f_sum[i][j] / n;
    }
  }
  return out;
}

FitResult fit(std::span<const double> data, const FitConfig& config) {
  const FreeParams which = config.free_params;
  const int k = which.count();
  if (k == 0) throw std::invalid_argument("no free parameters");
  if (data.size() < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("fewer observations than free parameters");
  }
  const auto idx = free_indices(which);
  const double n = double(data.size());

  StableParams start = config.init ? *config.init : auto_init(data);
  if (!config.init && (!which.mu || !which.sigma || !which.alpha)) {
    const StableParams a = auto_init(data);
    start = {which.mu ? a.mu() : 0.0, which.sigma ? a.sigma() : 1.0, a.alpha()};
  }
  Coords c{{}, which, start};
  {
    const double s = std::clamp((start.alpha() - kAlphaLo) / kAlphaSpan, 1e-6, 1.0 - 1e-6);
    c.w = {start.mu(), std::log(start.sigma()), std::log(s / (1.0 - s))};
  }

  auto loglik_at = [&](const Coords& cc) { return -neg_loglik(data, cc.params()); };

  FitResult res;
  double ll = loglik_at(c);
  if (!std::isfinite(ll)) {
    res.theta_hat = c.params();
    res.loglik = ll;
    return res;
  }

  auto kkt_ok = [&](const Vec3& g_theta, const StableParams& p) {
    const double tol = config.grad_tol * n;
    for (int i : idx) {
      if (std::fabs(g_theta[i]) <= tol) continue;
      // alpha pinned at an end of its range with the score pointing outward
      if (i == 2 && ((p.alpha() > 2.0 - 1e-6 && g_theta[2] > 0.0) ||
                     (p.alpha() < kAlphaLo + 1e-6 && g_theta[2] < 0.0))) {
        continue;
      }
      return false;
    }
    return true;
  };

  // No coordinate probe improves the log-likelihood: a numerical maximum
  // even where the analytic score and the density branch disagree slightly.
  auto probe_max = [&] {
    for (int i : idx) {
      for (double step : {-kProbeStep, kProbeStep}) {
        Coords trial = c;
        trial.w[i] += step;
        if (loglik_at(trial) > ll + kProbeGain * n) return false;
      }
    }
    return true;
  };

  Vec3 g_theta{};
  int iter = 0;
  bool converged = false;
  bool stalled = false;
  for (; iter < config.max_iter; ++iter) {
    const StableParams p = c.params();
    const Accumulated acc = accumulate(data, p, which);
    g_theta = acc.score_sum;
    if (kkt_ok(g_theta, p)) {
      converged = true;
      break;
    }
    // chain rule to w
    const double sg = logistic(c.w[2]);
    const Vec3 d1 = {1.0, p.sigma(), kAlphaSpan * sg * (1.0 - sg)};
    const Vec3 d2 = {0.0, p.sigma(), kAlphaSpan * sg * (1.0 - sg) * (1.0 - 2.0 * sg)};
    Vec3 g{};
    Mat3 neg_h{};
    for (int a = 0; a < k; ++a) {
      const int i = idx[a];
      g[a] = d1[i] * g_theta[i];
      for (int b = 0; b < k; ++b) {
        const int j = idx[b];
        const double h_theta = acc.hess_over_f_sum[i][j] - acc.outer_sum[i][j];
        neg_h[a][b] = -(d1[i] * d1[j] * h_theta + (a == b ? g_theta[i] * d2[i] : 0.0));
      }
    }
    Vec3 dir{};
    bool newton = false;
    Mat3 l = neg_h;
    if (cholesky(l, k)) {
      dir = cholesky_solve(l, g, k);
      double slope = 0.0;
      for (int a = 0; a < k; ++a) slope += dir[a] * g[a];
      newton = slope > 0.0;
    }
    double gnorm = 0.0;
    for (int a = 0; a < k; ++a) gnorm += g[a] * g[a];
    gnorm = std::sqrt(gnorm);
    if (!newton) {
      for (int a = 0; a < k; ++a) dir[a] = g[a] / std::max(gnorm, 1.0);
    }
    double dnorm = 0.0;
    for (int a = 0; a < k; ++a) dnorm += dir[a] * dir[a];
    dnorm = std::sqrt(dnorm);
    if (dnorm > 5.0) {
      for (int a = 0; a < k; ++a) dir[a] *= 5.0 / dnorm;
    }
    double slope = 0.0;
    for (int a = 0; a < k; ++a) slope += dir[a] * g[a];

    const double ll_before = ll;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      Coords trial = c;
      for (int a = 0; a < k; ++a) trial.w[idx[a]] += t * dir[a];
      const double llt = loglik_at(trial);
      if (std::isfinite(llt) && llt >= ll + 1e-4 * t * slope) {
        c = trial;
        ll = llt;
        accepted = true;
        break;
      }
    }
    if (!accepted || ll - ll_before <= 1e-13 * (1.0 + std::fabs(ll))) {
      stalled = true;
      break;
    }
  }

  res.theta_hat = c.params();
  res.loglik = ll;
  res.iterations = iter;
  if (!converged) {
    const Accumulated acc = accumulate(data, res.theta_hat, which);
    g_theta = acc.score_sum;
    converged = kkt_ok(g_theta, res.theta_hat) || (stalled && probe_max());
  }
  res.converged = converged;
  res.obs_info_1 = observed_info(data, res.theta_hat, 1, which);
  res.obs_info_2 = observed_info(data, res.theta_hat, 2, which);

  res.std_errors = {kNaN, kNaN, kNaN};
  auto try_se = [&](const Mat3& info) {
    Mat3 block{};
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) block[a][b] = n * info[idx[a]][idx[b]];
    }
    if (!cholesky(block, k)) return false;
    for (int a = 0; a < k; ++a) {
      Vec3 e{};
      e[a] = 1.0;
      res.std_errors[idx[a]] = std::sqrt(cholesky_solve(block, e, k)[a]);
    }
    return true;
  };
  if (!(config.std_error_variant == 2 && try_se(res.obs_info_2))) try_se(res.obs_info_1);
  return res;
}

SimulationResult simulate_alpha_mle(const SimulationConfig& cfg) {
  if (!(cfg.alpha >= kDerivativeAlphaFloor && cfg.alpha <= 2.0)) {
    throw std::domain_error("simulation alpha must lie in [0.2, 2]");
  }
  if (cfg.n < 1 || cfg.reps < 2) throw std::invalid_argument("need n >= 1 and reps >= 2");
  const RngStream root(cfg.seed);
  std::vector<double> a_hat(cfg.reps), i1(cfg.reps), i2(cfg.reps);
  std::vector<char> conv(cfg.reps);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.reps; r = next++) {
      RngStream rng = root.split(r);
      const auto data = sample(StableParams::standard(cfg.alpha), cfg.n, rng);
      FitConfig fc;
      fc.free_params = {false, false, true};
      fc.init = StableParams(0.0, 1.0, 1.0);
      const FitResult fr = fit(data, fc);
      a_hat[r] = fr.theta_hat.alpha();
      i1[r] = fr.obs_info_1[2][2];
      i2[r] = fr.obs_info_2[2][2];
      conv[r] = fr.converged;
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.reps));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  auto mean_var = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= double(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::pair{m, s / double(v.size() - 1)};
  };
  SimulationResult out;
  out.alpha = cfg.alpha;
  out.n = cfg.n;
  out.reps = cfg.reps;
  const auto [ma, va] = mean_var(a_hat);
  out.mean_alpha_hat = ma;
  // variance of sqrt(n)(alpha_hat - alpha) about its sample mean
  out.inv_var_scaled = 1.0 / (double(cfg.n) * va);
  std::tie(out.mean_info_1, out.var_info_1) = mean_var(i1);
  std::tie(out.mean_info_2, out.var_info_2) = mean_var(i2);
  out.exact_info = cfg.alpha < 2.0 ? info_matrix(cfg.alpha).i_alphaalpha
                                   : std::numeric_limits<double>::infinity();
  out.nonconverged = static_cast<std::size_t>(std::count(conv.begin(), conv.end(), 0));
  out.alpha_hats = std::move(a_hat);
  return out;
}

}  // namespace symstable
