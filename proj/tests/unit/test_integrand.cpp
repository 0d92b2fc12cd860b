#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symstable/integrand.hpp"
#include "test_util.hpp"

using namespace symstable;
using symstable::test::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Kernel, Constants) {
  const Kernel k(1.5, 2.0);
  EXPECT_DOUBLE_EQ(k.beta(), 3.0);
  EXPECT_EQ(k.sign(), 1);
  EXPECT_EQ(Kernel(0.5, 1).sign(), -1);
  EXPECT_DOUBLE_EQ(Kernel(0.5, 1).beta(), -1.0);
  EXPECT_THROW(Kernel(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Kernel(1.5, 0.0), std::invalid_argument);
  EXPECT_THROW(Kernel(2.5, 1.0), std::invalid_argument);
}

TEST(KernelG, Examples) {
  EXPECT_NEAR(g(Kernel(2, 2), kPi / 2), 1.0, 1e-14);
  EXPECT_NEAR(g(Kernel(2, 1), kPi / 6), 1.0, 1e-14);
  // alpha = 1/2, x = 1: g = sin(phi) / (2 cos^2 phi)
  EXPECT_NEAR(g(Kernel(0.5, 1), 1e-10), 5e-11, 1e-20);
}

TEST(KernelG, MonotoneOnGrid) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> ua(0.1, 2.0), ulx(-3, 3);
  int checked = 0;
  while (checked < 1000) {
    const double a = ua(gen);
    if (a > 0.99 && a < 1.01) continue;
    const double x = std::pow(10.0, ulx(gen));
    const Kernel k(a, x);
    double prev = g(k, kPi / 2 / 513);
    for (int i = 2; i <= 512; ++i) {
      const double v = g(k, kPi / 2 * i / 513);
      if (a < 1) {
        ASSERT_GE(v, prev) << a << " " << x << " " << i;
      } else {
        ASSERT_LE(v, prev) << a << " " << x << " " << i;
      }
      prev = v;
    }
    ++checked;
  }
}

TEST(HComponents, SignStructure) {
  EXPECT_NEAR(h_components(Kernel(1.5, 1), kPi / 3).h2, 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(h_components(Kernel(0.5, 1), 0.5).h3, 0.5 * std::tan(-0.25));
  for (double phi = 0.05; phi < 1.55; phi += 0.1) {
    const auto lo = h_components(Kernel(0.6, 2), phi);
    EXPECT_LT(lo.h2, 0) << phi;
    EXPECT_LE(lo.h3, 0) << phi;
    const auto hi = h_components(Kernel(1.6, 2), phi);
    EXPECT_GE(hi.h3, 0) << phi;
    if (phi < kPi / 3.2 - 1e-9) EXPECT_GT(hi.h2, 0) << phi;
    if (phi > kPi / 3.2 + 1e-9) EXPECT_LT(hi.h2, 0) << phi;
  }
}

TEST(HComponents, ReconstructsLogG) {
  const Kernel k(1.2, 2.0);
  const auto phi1 = solve_g(k, 1.0);
  ASSERT_TRUE(phi1);
  for (double phi : {*phi1, 0.3, 1.1}) {
    const auto h = h_components(k, phi);
    const double a = k.alpha();
    const double log_ratio = (a - 1) * (a - 1) * h.h1;
    EXPECT_NEAR(log_ratio, std::log(k.x() * std::cos(phi) / std::sin(a * phi)), 1e-13);
    const double lg = a / (a - 1) * log_ratio + std::log(std::cos((a - 1) * phi) / std::cos(phi));
    EXPECT_LT(rel_err(std::exp(lg), g(k, phi)), 1e-12);
  }
}

TEST(HComponents, H1DecreasingInPhi) {
  for (double a : {0.3, 0.8, 1.3, 1.9}) {
    for (double x : {0.01, 1.0, 50.0}) {
      const Kernel k(a, x);
      double prev = h_components(k, 1e-3).h1;
      for (int i = 2; i < 400; ++i) {
        const double v = h_components(k, kPi / 2 * i / 400).h1;
        ASSERT_LT(v, prev) << a << " " << x << " " << i;
        prev = v;
      }
    }
  }
}

TEST(GAlpha, IsMinusGTimesHSum) {
  const Kernel k(1.7, 0.8);
  for (double phi : {0.2, 0.9, 1.4}) {
    const auto h = h_components(k, phi);
    EXPECT_LT(rel_err(g_alpha(k, phi), -g(k, phi) * (h.h1 + h.h2 + h.h3)), 1e-14);
  }
}

TEST(GAlpha, MatchesFiniteDifference) {
  const double step = 1e-6;
  const struct {
    double a, x, phi;
  } cases[] = {{1.5, 1, 0.7}, {0.5, 1, 0.3}, {0.3, 2, 1.0}, {1.2, 0.5, 0.4}, {1.9, 3, 1.3},
               {0.8, 0.1, 0.6}};
  for (const auto& c : cases) {
    const double fd =
        (g(Kernel(c.a + step, c.x), c.phi) - g(Kernel(c.a - step, c.x), c.phi)) / (2 * step);
    EXPECT_LT(rel_err(g_alpha(Kernel(c.a, c.x), c.phi), fd), 1e-5) << c.a << " " << c.phi;
  }
}

TEST(SolveG, Examples) {
  const auto p = solve_g(Kernel(2, 1), 1.0);
  ASSERT_TRUE(p);
  EXPECT_NEAR(*p, std::asin(0.5), 1e-12);
  EXPECT_FALSE(solve_g(Kernel(2, 3), 1.0));
  const Kernel k(0.5, 1.0);
  const auto q = solve_g(k, 1.0);
  ASSERT_TRUE(q);
  EXPECT_NEAR(g(k, *q), 1.0, 1e-12);
  // level attained exactly at the right end
  const auto e = solve_g(Kernel(2, 2), 1.0);
  ASSERT_TRUE(e);
  EXPECT_NEAR(*e, kPi / 2, 1e-7);
}

TEST(SolveG, SolvedLevelsHoldAcrossParameters) {
  for (double a : {0.2, 0.5, 0.9, 1.1, 1.5, 1.95}) {
    for (double x : {0.05, 0.7, 3.0, 20.0}) {
      const Kernel k(a, x);
      for (double c : {kGoldenLow, 1.0, 2.0, kGoldenHigh, 4.0}) {
        if (const auto p = solve_g(k, c)) {
          EXPECT_LE(std::fabs(g(k, *p) - c), 1e-10 * c) << a << " " << x << " " << c;
        }
      }
    }
  }
}

TEST(SplitPoints, Ordering) {
  const double targets[] = {1.0, 2.0, 4.0};
  const auto lo = split_points(Kernel(0.5, 1), targets);
  ASSERT_TRUE(lo.phi_at(1) && lo.phi_at(2) && lo.phi_at(4));
  EXPECT_LT(*lo.phi_at(1), *lo.phi_at(2));
  EXPECT_LT(*lo.phi_at(2), *lo.phi_at(4));
  const auto hi = split_points(Kernel(1.5, 1), targets);
  ASSERT_TRUE(hi.phi_at(1) && hi.phi_at(2) && hi.phi_at(4));
  EXPECT_GT(*hi.phi_at(1), *hi.phi_at(2));
  EXPECT_GT(*hi.phi_at(2), *hi.phi_at(4));
  // near 2 the unit level sits in the endpoint layer of width ~ (2 - alpha)/x^2
  const double one[] = {1.0};
  const auto near_two = split_points(Kernel(1.999, 50), one).phi_at(1);
  ASSERT_TRUE(near_two);
  EXPECT_LT(kPi / 2 - *near_two, 1e-5);
  const double bad[] = {3.0};
  EXPECT_THROW(split_points(Kernel(1.5, 1), bad), std::invalid_argument);
}
