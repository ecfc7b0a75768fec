#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "eq_limiter.hpp"
#include "mesh.hpp"
#include "re_core.hpp"
#include "shallow_water.hpp"

namespace resideq {

// du/dt = -a du/dx - u on [x_min, x_max], u(x_min) = u_B
struct AdvectionParams
{
  double a = 1.0;
  Grid1D grid;
  double u_B = 1.0;

  void validate() const
  {
    if (!(a > 0.0)) throw std::invalid_argument("AdvectionParams: a must be positive");
    if (grid.n_cells < 2) throw std::invalid_argument("AdvectionParams: grid not initialised");
  }
};

inline Field advection_equilibrium(const AdvectionParams& p)
{
  p.validate();
  const double x0 = p.grid.x_min;
  return project_function(p.grid, [&](double x) { return p.u_B * std::exp(-(x - x0) / p.a); });
}

// U_{i+1/2} for i = -1..N-1: upwind value plus van Leer limited half slope.
// Ghosts: u_B twice on the left, zeroth-order extrapolation on the right.
inline std::vector<double> tvd_interface_values(const AdvectionParams& p, const Field& u)
{
  const std::size_t n = p.grid.n_cells;
  std::vector<double> w(n + 4);
  w[0] = w[1] = p.u_B;
  for (std::size_t i = 0; i < n; ++i) w[i + 2] = u[i];
  w[n + 2] = w[n + 3] = u[n - 1];
  std::vector<double> U(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t j = k + 1;
    U[k] = w[j] + 0.5 * van_leer_slope(w[j] - w[j - 1], w[j + 1] - w[j]);
  }
  return U;
}

inline SemiDiscreteOperator advection_tvd2_operator(const AdvectionParams& p)
{
  p.validate();
  SemiDiscreteOperator op;
  op.name = "advection_tvd2";
  op.order = 2;
  op.is_linear = false;
  op.shape = shape_of(p.grid);
  op.eval = [p](const Field& u, double) {
    const auto U = tvd_interface_values(p, u);
    Field g(u.shape());
    for (std::size_t i = 0; i < p.grid.n_cells; ++i)
      g[i] = -p.a * (U[i + 1] - U[i]) / p.grid.dx - u[i];
    return g;
  };
  return op;
}

// Per-cell limiter values phi_i = phi_fn(r_i), r_i = dU_i / dU^eq_i.
inline std::vector<double> advection_limiter_weights(const std::vector<double>& U,
                                                     const std::vector<double>& Ueq,
                                                     const LimiterConfig& cfg,
                                                     const std::function<double(double)>& phi_fn)
{
  const std::size_t n = U.size() - 1;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max({std::abs(U[i]), std::abs(U[i + 1]), std::abs(Ueq[i]),
                                   std::abs(Ueq[i + 1])}) + 1.0;
    w[i] = phi_fn(indicator_scalar(U[i + 1] - U[i], Ueq[i + 1] - Ueq[i], cfg, scale));
  }
  return w;
}

// -a (dU_i - phi_i dU^eq_i)/dx - (u_i - u^eq_i); the source is not limited.
inline SemiDiscreteOperator eq_limited_advection_operator(const AdvectionParams& p,
                                                          const Field& u_eq,
                                                          const LimiterConfig& cfg,
                                                          std::function<double(double)> phi_fn)
{
  p.validate();
  cfg.validate();
  SemiDiscreteOperator op;
  op.name = "advection_eq_limited";
  op.order = 2;
  op.is_linear = false;
  op.shape = shape_of(p.grid);
  if (!(u_eq.shape() == op.shape))
    throw std::invalid_argument("eq_limited_advection_operator: equilibrium shape mismatch");
  const auto Ueq = tvd_interface_values(p, u_eq);
  op.eval = [p, u_eq, Ueq, cfg, phi_fn](const Field& u, double) {
    const auto U = tvd_interface_values(p, u);
    const auto w = advection_limiter_weights(U, Ueq, cfg, phi_fn);
    Field g(u.shape());
    for (std::size_t i = 0; i < p.grid.n_cells; ++i) {
      const double flux = (U[i + 1] - U[i]) - w[i] * (Ueq[i + 1] - Ueq[i]);
      g[i] = -p.a * flux / p.grid.dx - (u[i] - u_eq[i]);
    }
    return g;
  };
  return op;
}

inline SemiDiscreteOperator eq_limited_advection_operator(const AdvectionParams& p,
                                                          const Field& u_eq,
                                                          const LimiterConfig& cfg)
{
  return eq_limited_advection_operator(p, u_eq, cfg, [cfg](double r) { return phi(r, cfg); });
}

struct TVDReport
{
  struct Row
  {
    int case_id = 0;
    std::string kind;
    int step = 0;
    double tv = 0.0;
    double max_increase = 0.0;
  };
  std::vector<Row> rows;
  double nu = 0.0;
  double dt = 0.0;
  int n_cases = 0;
  int violations = 0;
  // largest TV increase among steps where TV(u_eq) <= TV(u^n)
  double max_increase = 0.0;
};

inline void write_tvd_report_csv(std::ostream& os, const TVDReport& rep)
{
  os << "case,kind,step,tv,max_increase\n";
  os.precision(17);
  for (const auto& r : rep.rows)
    os << r.case_id << ',' << r.kind << ',' << r.step << ',' << r.tv << ',' << r.max_increase << '\n';
}

inline constexpr double tvd_tolerance = 1e-12;

// Total variation including the jump against the inflow state u_B; the outflow
// ghost copies the last cell and adds nothing.
inline double inflow_total_variation(const AdvectionParams& p, const Field& u)
{
  return std::abs(u[0] - p.u_B) + total_variation(u);
}

// Forward Euler on the equilibrium-limited scheme from a battery of initial data:
// u_eq, a step, a ramp, then n_random uniformly random profiles.
inline TVDReport tvd_sweep(const AdvectionParams& p, const LimiterConfig& cfg, double cfl,
                           int n_steps, int n_random = 20, unsigned long long seed = 1,
                           std::function<double(double)> phi_fn = {})
{
  p.validate();
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("tvd_sweep: cfl must lie in (0,1)");
  if (!phi_fn) phi_fn = [cfg](double r) { return phi(r, cfg); };
  TVDReport rep;
  rep.dt = cfl * p.grid.dx / p.a;
  rep.nu = cfl;
  if (rep.nu + rep.dt > 1.0) throw std::invalid_argument("tvd_sweep: nu + dt exceeds 1");

  const Field u_eq = advection_equilibrium(p);
  const double tv_eq = inflow_total_variation(p, u_eq);
  const auto op = eq_limited_advection_operator(p, u_eq, cfg, phi_fn);

  std::vector<std::pair<std::string, Field>> cases;
  cases.emplace_back("equilibrium", u_eq);
  cases.emplace_back("step", project_function(p.grid, [&](double x) {
                       return x < 0.5 * (p.grid.x_min + p.grid.x_max) ? 2.0 * p.u_B : 0.0;
                     }));
  cases.emplace_back("ramp", project_function(p.grid, [&](double x) {
                       return 2.0 * p.u_B * (x - p.grid.x_min) / (p.grid.x_max - p.grid.x_min);
                     }));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-p.u_B, 2.0 * p.u_B);
  for (int c = 0; c < n_random; ++c) {
    Field f(shape_of(p.grid));
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = U(rng);
    cases.emplace_back("random", std::move(f));
  }

  for (std::size_t c = 0; c < cases.size(); ++c) {
    Field u = cases[c].second;
    double tv = inflow_total_variation(p, u);
    double worst = 0.0;
    rep.rows.push_back({static_cast<int>(c), cases[c].first, 0, tv, worst});
    for (int s = 1; s <= n_steps; ++s) {
      const bool hypothesis = tv_eq <= tv;
      Field next = advance(StepperKind::forward_euler, rep.dt, op, u, 0.0);
      const double tv_next = inflow_total_variation(p, next);
      const double inc = tv_next - tv;
      if (hypothesis) {
        worst = std::max(worst, inc);
        rep.max_increase = std::max(rep.max_increase, inc);
        if (inc > tvd_tolerance) ++rep.violations;
      }
      u = std::move(next);
      tv = tv_next;
      rep.rows.push_back({static_cast<int>(c), cases[c].first, s, tv, worst});
    }
  }
  rep.n_cases = static_cast<int>(cases.size());
  return rep;
}

}  // namespace resideq
