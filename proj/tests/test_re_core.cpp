#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "resideq/fokker_planck.hpp"
#include "resideq/re_core.hpp"

using namespace resideq;

namespace {

SemiDiscreteOperator scalar_ode(double lambda)
{
  SemiDiscreteOperator op;
  op.name = "decay";
  op.is_linear = true;
  op.shape = FieldShape{1, 1, 1};
  op.eval = [lambda](const Field& u, double) {
    Field g = u;
    g *= -lambda;
    return g;
  };
  return op;
}

// -(u_i - u_{i-1})/dx with periodic wrap
SemiDiscreteOperator periodic_upwind(std::size_t n, double dx)
{
  SemiDiscreteOperator op;
  op.name = "periodic_upwind";
  op.is_linear = true;
  op.shape = FieldShape{n, 1, 1};
  op.eval = [n, dx](const Field& u, double) {
    Field g(u.shape());
    for (std::size_t i = 0; i < n; ++i) g[i] = -(u[i] - u[(i + n - 1) % n]) / dx;
    return g;
  };
  return op;
}

Field one_cell(double v) { return Field(FieldShape{1, 1, 1}, v); }

FPParams fp_params(std::size_t n = 100)
{
  FPParams p;
  p.grid = make_grid_1d(n, -5.0, 5.0);
  return p;
}

}  // namespace

TEST(ResidualEquilibrium, VanishesExactlyAtEquilibrium)
{
  const auto p = fp_params();
  const auto G = fp_upwind(p);
  const Field M = maxwellian(p, 1.0);
  const auto R = residual_equilibrium_operator(G, make_equilibrium(G, M));
  const Field r = R(M);
  EXPECT_EQ(r.max_abs(), 0.0);
  EXPECT_GT(G(M).max_abs(), 0.0);
  EXPECT_EQ(R.order, G.order);
  EXPECT_EQ(R.is_linear, G.is_linear);
}

TEST(ResidualEquilibrium, HandStencil)
{
  const auto G = periodic_upwind(3, 1.0);
  const Field u(FieldShape{3, 1, 1}, std::vector<double>{1, 2, 3});
  const Field ueq(FieldShape{3, 1, 1}, 1.0);
  const auto eq = make_equilibrium(G, ueq);
  EXPECT_EQ(eq.residual.max_abs(), 0.0);
  const Field out = residual_equilibrium_operator(G, eq)(u);
  EXPECT_EQ(out[0], 2.0);
  EXPECT_EQ(out[1], -1.0);
  EXPECT_EQ(out[2], -1.0);
}

TEST(ResidualEquilibrium, LinearOperatorShiftsArgument)
{
  const auto p = fp_params();
  const auto G = fp_central(p);
  const Field M = maxwellian(p, 1.0);
  const auto R = residual_equilibrium_operator(G, make_equilibrium(G, M));
  const Field u = project_function(p.grid, fp_two_gaussians);
  const Field a = R(u);
  const Field b = G(u - M);
  const double scale = G(u).max_abs();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-13 * scale);
}

TEST(ResidualEquilibrium, ShapeMismatchRejected)
{
  const auto G = periodic_upwind(3, 1.0);
  EquilibriumProfile bad{Field(FieldShape{4, 1, 1}), Field(FieldShape{4, 1, 1})};
  EXPECT_THROW(residual_equilibrium_operator(G, bad), std::invalid_argument);
  EXPECT_THROW(G(Field(FieldShape{4, 1, 1})), std::invalid_argument);
}

TEST(ResidualEquilibrium, MicroMacroStepForLinearOperator)
{
  const auto p = fp_params();
  const auto G = fp_central(p);
  const Field M = maxwellian(p, 1.0);
  const auto R = residual_equilibrium_operator(G, make_equilibrium(G, M));
  const Field u = project_function(p.grid, fp_two_gaussians);
  const double dt = 1.5e-4;
  const Field direct = advance(StepperKind::forward_euler, dt, R, u, 0.0);
  Field micro = advance(StepperKind::forward_euler, dt, G, u - M, 0.0);
  micro += M;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < u.size(); ++i)
    EXPECT_LE(std::abs(direct[i] - micro[i]), 10.0 * eps * std::max(1.0, std::abs(direct[i])));
}

TEST(ResidualEquilibrium, ConservationPassThrough)
{
  const auto p = fp_params();
  const auto G = fp_upwind(p);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Field ueq(shape_of(p.grid));
  for (double& v : ueq.data()) v = U(rng);
  const auto eq = make_equilibrium(G, ueq);
  const auto R = residual_equilibrium_operator(G, eq);
  const Field u = project_function(p.grid, fp_two_gaussians);
  double sum_R = 0.0, sum_r = 0.0, abs_r = 0.0;
  const Field out = R(u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum_R += out[i];
    sum_r += eq.residual[i];
    abs_r += std::abs(eq.residual[i]) + std::abs(out[i]);
  }
  EXPECT_NEAR(sum_R, -sum_r, 1e-14 * abs_r);
}

TEST(TimeDependentResidual, ReturnsReferenceDerivativeOnTrajectory)
{
  const auto p = fp_params(50);
  const auto G = fp_central(p);
  ReferenceTrajectory tr;
  tr.u_s = [&](double t) {
    return project_function(p.grid, [t](double v) { return std::exp(-t) * std::exp(-v * v); });
  };
  tr.du_s_dt = [&](double t) {
    return project_function(p.grid, [t](double v) { return -std::exp(-t) * std::exp(-v * v); });
  };
  const auto R = time_dependent_residual_operator(G, tr);
  for (double t : {0.0, 0.3, 2.0}) {
    const Field out = R(tr.u_s(t), t);
    EXPECT_EQ(out, tr.du_s_dt(t));
  }
}

TEST(TimeDependentResidual, StaticTrajectoryReducesToResidualEquilibrium)
{
  const auto p = fp_params(50);
  const auto G = fp_upwind(p);
  const Field M = maxwellian(p, 1.0);
  ReferenceTrajectory tr;
  tr.u_s = [M](double) { return M; };
  tr.du_s_dt = [M](double) { return Field(M.shape()); };
  const auto A = time_dependent_residual_operator(G, tr);
  const auto B = residual_equilibrium_operator(G, make_equilibrium(G, M));
  const Field u = project_function(p.grid, fp_two_gaussians);
  EXPECT_EQ(A(u, 0.7), B(u, 0.7));
}

TEST(TimeDependentResidual, RejectsTimesOutsideWindow)
{
  const auto G = scalar_ode(1.0);
  ReferenceTrajectory tr;
  tr.u_s = [](double) { return one_cell(1.0); };
  tr.du_s_dt = [](double) { return one_cell(0.0); };
  tr.t_max = 1.0;
  const auto R = time_dependent_residual_operator(G, tr);
  EXPECT_THROW(R(one_cell(1.0), 2.0), std::out_of_range);
}

TEST(Advance, ZeroOperatorLeavesStateUnchanged)
{
  const auto G = scalar_ode(0.0);
  for (auto k : {StepperKind::forward_euler, StepperKind::ssp_rk2, StepperKind::ssp_rk3})
    EXPECT_EQ(advance(k, 0.1, G, one_cell(3.5), 0.0)[0], 3.5);
}

TEST(Advance, DecayStepValues)
{
  const auto G = scalar_ode(1.0);
  EXPECT_NEAR(advance(StepperKind::forward_euler, 0.1, G, one_cell(1.0), 0.0)[0], 0.9, 1e-15);
  EXPECT_NEAR(advance(StepperKind::ssp_rk2, 0.1, G, one_cell(1.0), 0.0)[0], 0.905, 1e-15);
  const double h = 0.1;
  EXPECT_NEAR(advance(StepperKind::ssp_rk3, h, G, one_cell(1.0), 0.0)[0],
              1.0 - h + h * h / 2.0 - h * h * h / 6.0, 1e-15);
}

TEST(Advance, NonFiniteStageIsBlowUp)
{
  SemiDiscreteOperator op = scalar_ode(1.0);
  op.eval = [](const Field& u, double) {
    Field g = u;
    g[0] = std::numeric_limits<double>::infinity();
    return g;
  };
  try {
    advance(StepperKind::ssp_rk2, 0.1, op, one_cell(1.0), 2.5);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_EQ(e.time(), 2.5);
  }
}

TEST(RunSimulation, ZeroEndTime)
{
  SimulationOptions o;
  o.t_end = 0.0;
  o.diagnostics = [](double t, const Field& u) {
    DiagnosticsRecord r;
    r.t = t;
    r.mass = u[0];
    return r;
  };
  const auto res = run_simulation(scalar_ode(1.0), one_cell(2.0), {StepperKind::forward_euler, 0.1}, o);
  EXPECT_EQ(res.final[0], 2.0);
  EXPECT_EQ(res.steps, 0u);
  ASSERT_EQ(res.series.size(), 1u);
  EXPECT_EQ(res.series[0].t, 0.0);
}

TEST(RunSimulation, EquilibriumIsFixedPoint)
{
  const auto p = fp_params();
  const auto G = fp_chang_cooper(p);
  const Field M = maxwellian(p, 1.0);
  const auto R = residual_equilibrium_operator(fp_upwind(p), make_equilibrium(fp_upwind(p), M));
  SimulationOptions o;
  o.t_end = 0.37;
  const auto res = run_simulation(R, M, {StepperKind::ssp_rk3, 1e-3}, o);
  EXPECT_EQ(res.final, M);
}

TEST(RunSimulation, LinearDecayAccuracyAndExactEnd)
{
  SimulationOptions o;
  o.t_end = 1.0;
  o.sample_every = 0.25;
  o.diagnostics = [](double t, const Field&) {
    DiagnosticsRecord r;
    r.t = t;
    return r;
  };
  const auto res = run_simulation(scalar_ode(1.0), one_cell(1.0), {StepperKind::forward_euler, 0.001}, o);
  EXPECT_NEAR(res.final[0], std::exp(-1.0), 1e-3);
  EXPECT_EQ(res.t, 1.0);
  ASSERT_EQ(res.series.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(res.series[k].t, 0.25 * k, 1e-15);
}

TEST(RunSimulation, TruncatesFinalStep)
{
  SimulationOptions o;
  o.t_end = 0.35;
  const auto res = run_simulation(scalar_ode(1.0), one_cell(1.0), {StepperKind::forward_euler, 0.1}, o);
  EXPECT_EQ(res.steps, 4u);
  EXPECT_EQ(res.t, 0.35);
  EXPECT_NEAR(res.final[0], 0.9 * 0.9 * 0.9 * 0.95, 1e-15);
}

TEST(RunSimulation, StabilityLimitIsHonoured)
{
  SimulationOptions o;
  o.t_end = 1.0;
  o.dt_limit = [](const Field&, double) { return 0.25; };
  const auto res = run_simulation(scalar_ode(1.0), one_cell(1.0), {StepperKind::forward_euler, 1.0}, o);
  EXPECT_EQ(res.steps, 4u);
}

TEST(RunSimulation, SnapshotsAtRequestedTimes)
{
  SimulationOptions o;
  o.t_end = 1.0;
  o.snapshot_times = {0.0, 0.33, 1.0, 5.0};
  std::vector<double> seen;
  o.on_snapshot = [&](double t, const Field&) { seen.push_back(t); };
  run_simulation(scalar_ode(1.0), one_cell(1.0), {StepperKind::forward_euler, 0.1}, o);
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen[0], 0.0);
  EXPECT_EQ(seen[1], 0.33);
  EXPECT_EQ(seen[2], 1.0);
}

TEST(RunSimulation, PropagatesBlowUp)
{
  SimulationOptions o;
  o.t_end = 10.0;
  EXPECT_THROW(run_simulation(scalar_ode(-1e100), one_cell(1.0), {StepperKind::forward_euler, 1.0}, o),
               BlowUpError);
}
