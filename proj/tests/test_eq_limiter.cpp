#include <gtest/gtest.h>

#include <random>

#include "resideq/eq_limiter.hpp"

using namespace resideq;

TEST(Phi, BranchValues)
{
  const LimiterConfig c;
  EXPECT_EQ(phi(1.0, c), 1.0);
  EXPECT_EQ(phi(0.0, c), 0.0);
  EXPECT_EQ(phi(-3.0, c), 0.0);
  EXPECT_DOUBLE_EQ(phi(0.5, c), 0.25);
  EXPECT_DOUBLE_EQ(phi(2.0, c), 0.25);
}

TEST(Phi, BoundSweep)
{
  const LimiterConfig c;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 100.0);
  for (int k = 0; k < 10000; ++k) {
    double r = U(rng);
    if (r == 0.0) r = 1e-3;
    const double p = phi(r, c);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, std::min(1.0, r));
    EXPECT_LE(p / r, 1.0);
  }
}

TEST(Phi, MonotoneOnEachSide)
{
  for (double alpha : {1.5, 2.0, 4.0}) {
    LimiterConfig c;
    c.alpha = alpha;
    double prev = 0.0;
    for (int k = 1; k <= 1000; ++k) {
      const double v = phi(k / 1000.0, c);
      EXPECT_GE(v, prev);
      prev = v;
    }
    for (int k = 0; k <= 1000; ++k) {
      const double v = phi(1.0 + k * 0.1, c);
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
}

TEST(Phi, FarFromEquilibriumDecay)
{
  EXPECT_LE(phi(1e6, LimiterConfig{}), 1e-12);
}

TEST(LimiterConfig, Validation)
{
  EXPECT_THROW((LimiterConfig{1.0, 1e-14}.validate()), std::invalid_argument);
  EXPECT_THROW((LimiterConfig{2.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(LimiterConfig{}.validate());
}

TEST(IndicatorScalar, DegenerateAndRegularCases)
{
  const LimiterConfig c;
  EXPECT_EQ(indicator_scalar(0.0, 0.0, c), 1.0);
  EXPECT_EQ(phi(indicator_scalar(0.0, 0.0, c), c), 1.0);
  EXPECT_EQ(indicator_scalar(0.37, 0.37, c), 1.0);
  EXPECT_DOUBLE_EQ(indicator_scalar(-0.5, 0.25, c), -2.0);
  EXPECT_EQ(indicator_scalar(1e-16, -1e-16, c), 1.0);
  const double r = indicator_scalar(1.0, 1e-20, c, 1.0);
  EXPECT_GE(r, 1e13);
  EXPECT_LE(phi(r, c), 1e-26);
}

TEST(IndicatorSystem, DegenerateAndRegularCases)
{
  const LimiterConfig c;
  EXPECT_EQ(indicator_system({0.0, 0.0}, {0.0, 0.0}, c), 1.0);
  EXPECT_EQ(indicator_system({0.3, -0.2}, {0.3, -0.2}, c), 1.0);
  EXPECT_NEAR(indicator_system({0.6, -0.4}, {0.3, -0.2}, c), 2.0, 1e-12);
  EXPECT_NEAR(indicator_system({0.3, -0.2}, {0.3, 0.2}, c), 1.0, 1e-12);
  EXPECT_GE(indicator_system({1.0, 0.0}, {0.0, 0.0}, c), 1e13);
}
