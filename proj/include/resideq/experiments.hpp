#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "advection.hpp"
#include "boltzmann.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "fokker_planck.hpp"
#include "porous_medium.hpp"
#include "re_core.hpp"
#include "shallow_water.hpp"

namespace resideq {

// Everything needed to integrate one configured run.
struct Experiment
{
  SemiDiscreteOperator op;
  Field u0;
  Field u_eq;
  TimeStepper stepper;
  std::function<double(const Field&, double)> dt_limit;
  std::function<DiagnosticsRecord(double, const Field&)> diagnostics;
  std::function<void(std::ostream&, const Field&)> write_snapshot;
};

namespace detail {

inline double field_sum(const Field& f, std::size_t comp = 0)
{
  double s = 0.0;
  for (std::size_t k = 0; k < f.cells(); ++k) s += f.at(k, comp);
  return s;
}

inline Experiment make_fp(const RunConfig& c)
{
  FPParams p;
  p.grid = make_grid_1d(c.n_cells, -5.0, 5.0);
  Experiment e;
  e.u0 = project_function(p.grid, fp_two_gaussians);
  const double rho = mass(e.u0, p.grid.dx);
  e.u_eq = discrete_maxwellian(p, rho);
  const std::string& s = c.scheme;
  SemiDiscreteOperator base = s == "su" || s == "reu" ? fp_upwind(p)
                              : s == "cc"             ? fp_chang_cooper(p)
                                                      : fp_central(p);
  e.op = s == "reu" || s == "rec" ? residual_equilibrium_operator(base, make_equilibrium(base, e.u_eq))
                                  : base;
  if (c.start_at_equilibrium) e.u0 = e.u_eq;
  e.stepper = {c.stepper, c.dt.value_or(1.5e-4)};
  const Grid1D g = p.grid;
  const Field M = e.u_eq;
  e.diagnostics = [g, M](double t, const Field& u) {
    DiagnosticsRecord r;
    r.t = t;
    r.entropy = relative_entropy_fp(u, M, g);
    const auto err = lp_errors(u, M, g);
    r.l1_error = err.l1;
    r.linf_error = err.linf;
    r.tv = total_variation(u);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < g.n_cells; ++i) {
      m0 += u[i];
      m1 += u[i] * g.centers[i];
      m2 += 0.5 * u[i] * g.centers[i] * g.centers[i];
    }
    r.mass = m0 * g.dx;
    r.momentum = m1 * g.dx;
    r.energy = m2 * g.dx;
    return r;
  };
  e.write_snapshot = [g](std::ostream& os, const Field& u) { write_snapshot(os, g, u); };
  return e;
}

inline Experiment make_pme(const RunConfig& c)
{
  PMEParams p;
  p.grid = make_grid_2d(c.n_cells, -10.0, 10.0, c.n_cells, -10.0, 10.0);
  p.m = 5.0;
  Experiment e;
  e.u0 = project_function(p.grid, pme_gaussian_ring);
  const double target = mass(e.u0, p.grid.cell_volume());
  e.u_eq = barenblatt(p, target).field;
  const SemiDiscreteOperator base = pme_upwind(p);
  e.op = c.scheme == "reu" ? residual_equilibrium_operator(base, make_equilibrium(base, e.u_eq))
                           : base;
  if (c.start_at_equilibrium) e.u0 = e.u_eq;
  e.stepper = {c.stepper, c.dt.value_or(std::numeric_limits<double>::infinity())};
  if (!c.dt) e.dt_limit = [p](const Field& u, double) { return pme_stable_dt(p, u); };
  const Grid2D g = p.grid;
  const Field B = e.u_eq;
  const double m = p.m;
  e.diagnostics = [g, B, m](double t, const Field& u) {
    DiagnosticsRecord r;
    r.t = t;
    r.entropy = relative_entropy_pme(u, B, g, m);
    const auto err = lp_errors(u, B, g);
    r.l1_error = err.l1;
    r.linf_error = err.linf;
    r.mass = mass(u, g.cell_volume());
    return r;
  };
  e.write_snapshot = [g](std::ostream& os, const Field& u) { write_snapshot(os, g, u); };
  return e;
}

inline Experiment make_boltzmann(const RunConfig& c, int threads)
{
  const SpectralConfig cfg = make_spectral_config(static_cast<int>(c.n_cells), 8.0, c.m_angles, threads);
  const Grid2D g = velocity_grid(cfg);
  Experiment e;
  e.u0 = bkw_field(g, 0.0);
  e.u_eq = maxwellian_2d(g, 1.0, 0.0, 0.0, 1.0);
  const SemiDiscreteOperator Q = collision_operator(cfg);
  if (c.scheme == "refs") e.op = re_collision(cfg, e.u_eq);
  else if (c.scheme == "tdr") e.op = time_dependent_residual_operator(Q, bkw_trajectory(g));
  else e.op = Q;
  if (c.start_at_equilibrium) e.u0 = e.u_eq;
  e.stepper = {c.stepper, c.dt.value_or(0.01)};
  const Field M = e.u_eq;
  const bool at_eq = c.start_at_equilibrium;
  e.diagnostics = [g, M, at_eq](double t, const Field& f) {
    DiagnosticsRecord r;
    r.t = t;
    const auto H = relative_entropy_boltzmann(f, M, g);
    r.entropy = H.value;
    r.neg_cells = H.neg_cells;
    const auto err = lp_errors(f, at_eq ? M : bkw_field(g, t), g);
    r.l1_error = err.l1;
    r.linf_error = err.linf;
    double m0 = 0.0, mx = 0.0, en = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i)
      for (std::size_t j = 0; j < g.ny(); ++j) {
        const double vx = g.x.centers[i], vy = g.y.centers[j], v = f[g.index(i, j)];
        m0 += v;
        mx += v * vx;
        en += 0.5 * v * (vx * vx + vy * vy);
      }
    r.mass = m0 * g.cell_volume();
    r.momentum = mx * g.cell_volume();
    r.energy = en * g.cell_volume();
    return r;
  };
  e.write_snapshot = [g](std::ostream& os, const Field& u) { write_snapshot(os, g, u); };
  return e;
}

inline Experiment make_swe(const RunConfig& c)
{
  const bool lake = c.test == "lake";
  const Grid1D grid = lake ? make_grid_1d(c.n_cells, 0.0, 1.0) : make_grid_1d(c.n_cells, 0.0, 25.0);
  const SWEParams p =
      lake ? make_swe_params(grid, c.g, lake_topography, SWEBoundary::reflective_walls())
           : make_swe_params(grid, c.g, transcritical_topography,
                             SWEBoundary::inflow_outflow(0.18, 0.33));
  Experiment e;
  if (lake) {
    e.u_eq = lake_at_rest_equilibrium(p);
    e.u0 = lake_perturbed_state(p, c.perturbation);
  } else {
    e.u_eq = transcritical_equilibrium(p, 0.18, 0.33).state;
    e.u0 = Field(shape_of(grid, 2));
    for (std::size_t i = 0; i < grid.n_cells; ++i) e.u0.at(i, 0) = 0.33 - p.topography[i];
  }
  LimiterConfig lim;
  lim.alpha = c.alpha;
  lim.epsilon = c.indicator_epsilon;
  if (c.scheme == "lf") e.op = lf2_operator(p);
  else if (c.scheme == "relf") e.op = relf_operator(p, e.u_eq);
  else e.op = fl_relf_operator(p, e.u_eq, lim);
  if (c.start_at_equilibrium) e.u0 = e.u_eq;
  // dx/dt = 10, never above CFL 0.9
  e.stepper = {c.stepper, c.dt.value_or(grid.dx / 10.0)};
  e.dt_limit = [p](const Field& u, double) { return swe_stable_dt(p, u, 0.9); };
  const Field ueq = e.u_eq;
  e.diagnostics = [p, ueq](double t, const Field& u) {
    DiagnosticsRecord r;
    r.t = t;
    double l1 = 0.0, linf = 0.0, m = 0.0, mv = 0.0, en = 0.0;
    for (std::size_t i = 0; i < p.grid.n_cells; ++i) {
      const double h = u.at(i, 0), hv = u.at(i, 1);
      const double d = std::abs(h - ueq.at(i, 0));
      l1 += d;
      linf = std::max(linf, d);
      m += h;
      mv += hv;
      en += 0.5 * hv * hv / h + 0.5 * p.g * h * h + p.g * h * p.topography[i];
    }
    r.l1_error = l1 * p.grid.dx;
    r.linf_error = linf;
    r.mass = m * p.grid.dx;
    r.momentum = mv * p.grid.dx;
    r.energy = en * p.grid.dx;
    r.froude_max = froude_max(p, u);
    return r;
  };
  e.write_snapshot = [grid](std::ostream& os, const Field& u) { write_snapshot(os, grid, u); };
  return e;
}

inline AdvectionParams advect_params(const RunConfig& c)
{
  AdvectionParams p;
  p.a = 1.0;
  p.grid = make_grid_1d(c.n_cells, 0.0, 5.0);
  p.u_B = 1.0;
  return p;
}

inline Experiment make_advect(const RunConfig& c)
{
  const AdvectionParams p = advect_params(c);
  Experiment e;
  e.u_eq = advection_equilibrium(p);
  e.u0 = Field(shape_of(p.grid), 0.0);
  LimiterConfig lim;
  lim.alpha = c.alpha;
  lim.epsilon = c.indicator_epsilon;
  const SemiDiscreteOperator base = advection_tvd2_operator(p);
  if (c.scheme == "tvd2") e.op = base;
  else if (c.scheme == "re") e.op = residual_equilibrium_operator(base, make_equilibrium(base, e.u_eq));
  else e.op = eq_limited_advection_operator(p, e.u_eq, lim);
  if (c.start_at_equilibrium) e.u0 = e.u_eq;
  e.stepper = {c.stepper, c.dt.value_or(c.cfl * p.grid.dx / p.a)};
  const Grid1D g = p.grid;
  const Field ueq = e.u_eq;
  e.diagnostics = [g, ueq](double t, const Field& u) {
    DiagnosticsRecord r;
    r.t = t;
    const auto err = lp_errors(u, ueq, g);
    r.l1_error = err.l1;
    r.linf_error = err.linf;
    r.tv = total_variation(u);
    r.mass = mass(u, g.dx);
    return r;
  };
  e.write_snapshot = [g](std::ostream& os, const Field& u) { write_snapshot(os, g, u); };
  return e;
}

}  // namespace detail

inline Experiment make_experiment(const RunConfig& c, int threads = 1)
{
  if (c.model == "fp") return detail::make_fp(c);
  if (c.model == "pme") return detail::make_pme(c);
  if (c.model == "boltzmann") return detail::make_boltzmann(c, threads);
  if (c.model == "swe") return detail::make_swe(c);
  if (c.model == "advect") return detail::make_advect(c);
  throw ConfigError("unknown model '" + c.model + "'");
}

inline std::string snapshot_name(double t)
{
  std::ostringstream s;
  s << "solution_t" << t << ".dat";
  return s.str();
}

struct RunOutcome
{
  int status = 0;  // 0 ok, 2 blow-up
  std::string message;
  std::vector<DiagnosticsRecord> series;
};

// Writes diagnostics.csv (or tvd_report.csv) and snapshots into c.output_dir.
inline RunOutcome run(const RunConfig& c, int threads = 1, std::ostream& log = std::clog)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec || !fs::is_directory(c.output_dir))
    throw std::runtime_error("cannot create output directory '" + c.output_dir + "'");
  auto open = [&](const std::string& name) {
    std::ofstream f(fs::path(c.output_dir) / name);
    if (!f) throw std::runtime_error("cannot write '" + name + "' in '" + c.output_dir + "'");
    return f;
  };

  RunOutcome out;
  if (c.model == "advect" && c.test == "tvd_sweep") {
    LimiterConfig lim;
    lim.alpha = c.alpha;
    lim.epsilon = c.indicator_epsilon;
    const TVDReport rep = tvd_sweep(detail::advect_params(c), lim, c.cfl, c.n_steps, c.n_random, c.seed);
    auto f = open("tvd_report.csv");
    write_tvd_report_csv(f, rep);
    std::ostringstream msg;
    msg << "tvd sweep: " << rep.n_cases << " cases, nu=" << rep.nu << ", dt=" << rep.dt
        << ", violations=" << rep.violations << ", max increase=" << rep.max_increase;
    out.message = msg.str();
    log << out.message << '\n';
    return out;
  }

  const Experiment e = make_experiment(c, threads);
  SimulationOptions opts;
  opts.t_end = c.t_end;
  opts.sample_every = c.sample_every;
  opts.snapshot_times = c.snapshot_times;
  opts.dt_limit = e.dt_limit;
  opts.diagnostics = [&](double t, const Field& u) {
    out.series.push_back(e.diagnostics(t, u));
    return out.series.back();
  };
  opts.on_snapshot = [&](double t, const Field& u) {
    auto f = open(snapshot_name(t));
    e.write_snapshot(f, u);
  };
  try {
    run_simulation(e.op, e.u0, e.stepper, opts);
    out.message = c.model + "/" + c.test + "/" + c.scheme + ": reached t = " + std::to_string(c.t_end);
  } catch (const BlowUpError& err) {
    out.status = 2;
    out.message = err.what();
  }
  auto f = open("diagnostics.csv");
  write_diagnostics_csv(f, out.series);
  log << out.message << '\n';
  return out;
}

}  // namespace resideq
