#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "symstable/density.hpp"
#include "symstable/quadrature.hpp"
#include "symstable/sampling.hpp"

using namespace symstable;

namespace {
constexpr double kPi = std::numbers::pi;

// Kolmogorov-Smirnov statistic of the sample against cdf.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

// asymptotic 1% critical value
double ks_critical(std::size_t n) { return 1.6276 / std::sqrt(double(n)); }
}  // namespace

TEST(RngStream, Deterministic) {
  RngStream a(42), b(42), c(43);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 100; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_EQ(a.counter(), 100u);
  EXPECT_EQ(a.seed(), 42u);
}

TEST(RngStream, SplitLeavesParentAndDiffers) {
  RngStream parent(9);
  parent.next_u64();
  const auto before = parent.counter();
  RngStream c0 = parent.split(0), c1 = parent.split(1), c0b = parent.split(0);
  EXPECT_EQ(parent.counter(), before);
  std::vector<std::uint64_t> v0, v1, v0b, vp;
  for (int i = 0; i < 50; ++i) {
    v0.push_back(c0.next_u64());
    v1.push_back(c1.next_u64());
    v0b.push_back(c0b.next_u64());
    vp.push_back(parent.next_u64());
  }
  EXPECT_EQ(v0, v0b);
  EXPECT_NE(v0, v1);
  EXPECT_NE(v0, vp);
}

TEST(RngStream, UniformOpenInterval) {
  RngStream rng(1);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
}

TEST(Sample, CauchyKolmogorovSmirnov) {
  RngStream rng(2024);
  const auto xs = sample(StableParams::standard(1), 10000, rng);
  const double d = ks_statistic(xs, [](double x) { return 0.5 + std::atan(x) / kPi; });
  EXPECT_LT(d, ks_critical(xs.size()));
}

TEST(Sample, NormalKolmogorovSmirnovAndVariance) {
  RngStream rng(31);
  const auto xs = sample(StableParams::standard(2), 10000, rng);
  const double d = ks_statistic(xs, [](double x) { return 0.5 * std::erfc(-x / 2); });
  EXPECT_LT(d, ks_critical(xs.size()));

  const auto big = sample(StableParams(0, 1.5, 2), 100000, rng);
  double m = 0, v = 0;
  for (double x : big) m += x;
  m /= double(big.size());
  for (double x : big) v += (x - m) * (x - m);
  v /= double(big.size() - 1);
  EXPECT_NEAR(v / (2 * 1.5 * 1.5), 1.0, 0.03);
}

TEST(Sample, HistogramChiSquare) {
  const double a = 1.5;
  const int inner = 48;
  const double lo = -6, hi = 6, w = (hi - lo) / inner;
  auto f = [a](double x) { return evaluate_standard(Quantity::F, x, a).value; };
  std::vector<double> prob(inner + 2);
  double inner_mass = 0;
  for (int b = 0; b < inner; ++b) {
    prob[b + 1] = integrate(f, lo + b * w, lo + (b + 1) * w).value;
    inner_mass += prob[b + 1];
  }
  prob[0] = prob[inner + 1] = (1 - inner_mass) / 2;

  RngStream rng(15);
  const std::size_t n = 100000;
  const auto xs = sample(StableParams::standard(a), n, rng);
  std::vector<double> count(inner + 2, 0);
  for (double x : xs) {
    const int b = x < lo ? 0 : x >= hi ? inner + 1 : 1 + std::min(inner - 1, int((x - lo) / w));
    count[b] += 1;
  }
  double chi2 = 0;
  for (int b = 0; b < inner + 2; ++b) {
    const double e = prob[b] * double(n);
    chi2 += (count[b] - e) * (count[b] - e) / e;
  }
  EXPECT_LT(chi2, 74.92);  // chi-square(49) upper 1% point
}

TEST(Sample, SymmetricAboutLocation) {
  for (double a : {0.3, 0.8, 1.0, 1.4, 2.0}) {
    RngStream rng(500 + std::uint64_t(a * 10));
    const StableParams p(3.0, 0.7, a);
    const auto xs = sample(p, 20000, rng);
    double s = 0;
    for (double x : xs) s += x > 3.0 ? 1 : x < 3.0 ? -1 : 0;
    EXPECT_LT(std::fabs(s / double(xs.size())), 4 / std::sqrt(double(xs.size()))) << a;
  }
}

TEST(Sample, SameSeedSameOutput) {
  RngStream a(8), b(8);
  const auto xa = sample(StableParams(1, 2, 0.7), 1000, a);
  const auto xb = sample(StableParams(1, 2, 0.7), 1000, b);
  EXPECT_EQ(xa, xb);
  for (double x : xa) EXPECT_TRUE(std::isfinite(x));
}
