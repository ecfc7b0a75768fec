#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "resideq/fokker_planck.hpp"
#include "resideq/mesh.hpp"

using namespace resideq;

TEST(Grid1D, SpacingAndCenters)
{
  const auto g = make_grid_1d(100, -5.0, 5.0);
  EXPECT_DOUBLE_EQ(g.dx, 0.1);
  EXPECT_NEAR(g.centers[0], -4.95, 1e-15);
  EXPECT_EQ(g.centers.size(), 100u);
  for (std::size_t i = 1; i < g.n_cells; ++i) EXPECT_LT(g.centers[i - 1], g.centers[i]);
  EXPECT_NEAR(g.centers[0] - g.x_min, g.dx / 2, 1e-15);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(g.centers[i], -g.centers[99 - i]);
}

TEST(Grid1D, TwoCells)
{
  const auto g = make_grid_1d(2, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(g.centers[0], 0.25);
  EXPECT_DOUBLE_EQ(g.centers[1], 0.75);
}

TEST(Grid1D, ChannelSpacing)
{
  EXPECT_DOUBLE_EQ(make_grid_1d(200, 0.0, 25.0).dx, 0.125);
}

TEST(Grid1D, RejectsBadInput)
{
  EXPECT_THROW(make_grid_1d(0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid_1d(1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid_1d(10, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid_1d(10, 2.0, 1.0), std::invalid_argument);
}

TEST(Grid2D, TensorProduct)
{
  const auto g = make_grid_2d(4, -1.0, 1.0, 3, 0.0, 3.0);
  EXPECT_EQ(g.n_cells(), 12u);
  EXPECT_DOUBLE_EQ(g.dx(), 0.5);
  EXPECT_DOUBLE_EQ(g.dy(), 1.0);
  EXPECT_EQ(g.index(1, 2), 5u);
}

TEST(ProjectFunction, ConstantAndLinear)
{
  const auto g = make_grid_1d(7, -1.0, 2.0);
  const Field one = project_function(g, [](double) { return 1.0; });
  for (double v : one.data()) EXPECT_EQ(v, 1.0);
  const Field lin = project_function(make_grid_1d(2, 0.0, 1.0), [](double x) { return x; });
  EXPECT_DOUBLE_EQ(lin[0], 0.25);
  EXPECT_DOUBLE_EQ(lin[1], 0.75);
}

TEST(ProjectFunction, RoundTripIsExact)
{
  const auto g = make_grid_1d(37, -3.0, 4.0);
  auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
  const Field u = project_function(g, f);
  for (std::size_t i = 0; i < g.n_cells; ++i) EXPECT_EQ(u[i], f(g.centers[i]));
}

TEST(ProjectFunction, MaxwellianNearOrigin)
{
  FPParams p;
  p.grid = make_grid_1d(100, -5.0, 5.0);
  const Field M = maxwellian(p, 1.0);
  const double expect = std::exp(-0.05 * 0.05 / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  EXPECT_NEAR(M[50], expect, 1e-15);
  EXPECT_NEAR(M[49], expect, 1e-15);
}

TEST(ProjectFunction, RejectsNonFinite)
{
  const auto g = make_grid_1d(4, -1.0, 1.0);
  EXPECT_THROW(project_function(g, [](double x) { return 1.0 / (x - 0.25); }), std::domain_error);
  EXPECT_THROW(project_function(g, [](double) { return std::nan(""); }), std::domain_error);
}

TEST(Field, ArithmeticIsElementwise)
{
  const auto g = make_grid_1d(16, 0.0, 1.0);
  const Field a = project_function(g, [](double x) { return std::exp(x); });
  const Field b = project_function(g, [](double x) { return 1.0 / (1.0 + x); });
  const Field s = a + b;
  const Field d = a - b;
  Field ax = a;
  ax.axpy(0.3, b);
  const Field sc = 1.7 * a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(s[i], a[i] + b[i]);
    EXPECT_EQ(d[i], a[i] - b[i]);
    EXPECT_EQ(ax[i], a[i] + 0.3 * b[i]);
    EXPECT_EQ(sc[i], 1.7 * a[i]);
  }
}

TEST(Field, ShapeChecks)
{
  Field a(FieldShape{4, 1, 1});
  Field b(FieldShape{4, 1, 2});
  EXPECT_THROW(a += b, std::invalid_argument);
  EXPECT_THROW(Field(FieldShape{4, 1, 1}, std::vector<double>(3)), std::invalid_argument);
  EXPECT_EQ(b.size(), 8u);
  b.at(2, 1) = 5.0;
  EXPECT_EQ(b[5], 5.0);
}

TEST(Snapshot, OneDimensionalSystem)
{
  const auto g = make_grid_1d(2, 0.0, 1.0);
  Field u(shape_of(g, 2));
  u.at(0, 0) = 1.0;
  u.at(0, 1) = 0.5;
  u.at(1, 0) = 2.0;
  u.at(1, 1) = -0.25;
  std::ostringstream os;
  write_snapshot(os, g, u);
  EXPECT_EQ(os.str(), "0.25 1 0.5\n0.75 2 -0.25\n");
}

TEST(Snapshot, TwoDimensionalBlock)
{
  const auto g = make_grid_2d(2, 0.0, 1.0, 3, 0.0, 1.0);
  const Field u = project_function(g, [](double x, double y) { return x < 0.5 ? 1.0 + 3 * y : 2.0; });
  std::ostringstream os;
  write_snapshot(os, g, u);
  std::istringstream in(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double a, b;
    ls >> a >> b;
    EXPECT_EQ(b, 2.0);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}
