#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "resideq/advection.hpp"

using namespace resideq;

namespace {

AdvectionParams params(std::size_t n = 100)
{
  AdvectionParams p;
  p.a = 1.0;
  p.grid = make_grid_1d(n, 0.0, 5.0);
  p.u_B = 1.0;
  return p;
}

double vl(double a, double b) { return a * b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

}  // namespace

TEST(AdvectionEquilibrium, Values)
{
  const auto p = params();
  const Field e = advection_equilibrium(p);
  EXPECT_NEAR(e[0], std::exp(-0.025), 1e-15);
  EXPECT_NEAR(e[99], std::exp(-4.975), 1e-15);
}

TEST(TVD2, ZeroInflowZeroStateIsSteady)
{
  auto p = params(10);
  p.u_B = 0.0;
  EXPECT_EQ(advection_tvd2_operator(p)(Field(shape_of(p.grid)), 0.0).max_abs(), 0.0);
}

TEST(TVD2, ConstantInflowState)
{
  const auto p = params(10);
  const Field u(shape_of(p.grid), 1.0);
  const Field g = advection_tvd2_operator(p)(u, 0.0);
  for (double v : g.data()) EXPECT_EQ(v, -1.0);
}

TEST(TVD2, DenseOracle)
{
  auto p = params(5);
  p.a = 0.7;
  p.u_B = 0.4;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Field u(shape_of(p.grid));
  for (double& v : u.data()) v = U(rng);
  const double dx = p.grid.dx;
  auto w = [&](int i) { return i < 0 ? p.u_B : i > 4 ? u[4] : u[i]; };
  auto face = [&](int i) { return w(i) + 0.5 * vl(w(i) - w(i - 1), w(i + 1) - w(i)); };
  const Field g = advection_tvd2_operator(p)(u, 0.0);
  for (int i = 0; i < 5; ++i)
    EXPECT_NEAR(g[i], -0.7 * (face(i) - face(i - 1)) / dx - u[i], 1e-13);
}

TEST(EqLimited, EquilibriumIsExactlyStationary)
{
  const auto p = params();
  const Field e = advection_equilibrium(p);
  EXPECT_EQ(eq_limited_advection_operator(p, e, LimiterConfig{})(e, 0.0).max_abs(), 0.0);
}

TEST(EqLimited, ZeroLimiterRecoversTVD2FluxPart)
{
  const auto p = params(40);
  const Field e = advection_equilibrium(p);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 2.0);
  Field u(shape_of(p.grid));
  for (double& v : u.data()) v = U(rng);
  const Field lim = eq_limited_advection_operator(p, e, LimiterConfig{}, [](double) { return 0.0; })(u, 0.0);
  const Field base = advection_tvd2_operator(p)(u, 0.0);
  // flux differences coincide bitwise; the sources differ by u_eq
  const auto Uf = tvd_interface_values(p, u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(lim[i], -p.a * (Uf[i + 1] - Uf[i]) / p.grid.dx - (u[i] - e[i]));
    EXPECT_NEAR(lim[i], base[i] + e[i], 1e-13);
  }
}

TEST(EqLimited, WeightsMatchLimiterOnRatio)
{
  LimiterConfig cfg;
  const std::vector<double> U{0.0, 0.5, 1.5}, Ueq{0.0, 1.0, 2.0};
  const auto w = advection_limiter_weights(U, Ueq, cfg, [cfg](double r) { return phi(r, cfg); });
  EXPECT_DOUBLE_EQ(w[0], 0.25);
  EXPECT_DOUBLE_EQ(w[1], 1.0);
}

TEST(TVDSweep, InflowVariationCountsBoundaryJump)
{
  const auto p = params(4);
  const Field u(shape_of(p.grid), std::vector<double>{3.0, 1.0, 1.0, 2.0});
  EXPECT_EQ(inflow_total_variation(p, u), 2.0 + 2.0 + 1.0);
}

TEST(TVDSweep, NoViolationsForVanLeerLimiter)
{
  const auto rep = tvd_sweep(params(), LimiterConfig{}, 0.4, 200, 20, 1);
  EXPECT_EQ(rep.n_cases, 23);
  EXPECT_EQ(rep.violations, 0);
  EXPECT_LE(rep.max_increase, tvd_tolerance);
  EXPECT_EQ(rep.rows.size(), 23u * 201u);
}

TEST(TVDSweep, AdversarialLimiterIsCaught)
{
  const auto rep = tvd_sweep(params(), LimiterConfig{}, 0.4, 200, 20, 1, [](double r) { return 2.0 * r; });
  EXPECT_GE(rep.violations, 1);
}

TEST(TVDSweep, Deterministic)
{
  const auto a = tvd_sweep(params(30), LimiterConfig{}, 0.4, 20, 5, 7);
  const auto b = tvd_sweep(params(30), LimiterConfig{}, 0.4, 20, 5, 7);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) EXPECT_EQ(a.rows[k].tv, b.rows[k].tv);
}

TEST(TVDSweep, RejectsLargeSteps)
{
  EXPECT_THROW(tvd_sweep(params(), LimiterConfig{}, 1.2, 10), std::invalid_argument);
  EXPECT_THROW(tvd_sweep(params(2), LimiterConfig{}, 0.9, 10), std::invalid_argument);
}
