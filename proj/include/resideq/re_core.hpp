#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "mesh.hpp"

namespace resideq {

// Right-hand side u -> G_h(u, t) of a semi-discrete scheme.
struct SemiDiscreteOperator
{
  std::string name;
  int order = 1;
  bool is_linear = false;
  FieldShape shape{};
  std::function<Field(const Field&, double)> eval;

  Field operator()(const Field& u, double t = 0.0) const
  {
    if (!(u.shape() == shape))
      throw std::invalid_argument(name + ": field shape does not match operator");
    return eval(u, t);
  }
};

struct EquilibriumProfile
{
  Field u_eq;
  Field residual;
};

inline EquilibriumProfile make_equilibrium(const SemiDiscreteOperator& G, Field u_eq)
{
  Field r = G(u_eq, 0.0);
  return {std::move(u_eq), std::move(r)};
}

struct ReferenceTrajectory
{
  std::function<Field(double)> u_s;
  std::function<Field(double)> du_s_dt;
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();
};

inline SemiDiscreteOperator residual_equilibrium_operator(const SemiDiscreteOperator& G,
                                                          const EquilibriumProfile& eq)
{
  if (!(eq.u_eq.shape() == G.shape) || !(eq.residual.shape() == G.shape))
    throw std::invalid_argument("residual_equilibrium_operator: equilibrium shape mismatch");
  SemiDiscreteOperator out;
  out.name = "re(" + G.name + ")";
  out.order = G.order;
  out.is_linear = G.is_linear;
  out.shape = G.shape;
  out.eval = [G, r = eq.residual](const Field& u, double t) {
    Field g = G.eval(u, t);
    g -= r;
    return g;
  };
  return out;
}

inline SemiDiscreteOperator time_dependent_residual_operator(const SemiDiscreteOperator& G,
                                                             const ReferenceTrajectory& traj)
{
  if (!traj.u_s || !traj.du_s_dt)
    throw std::invalid_argument("time_dependent_residual_operator: empty trajectory");
  SemiDiscreteOperator out;
  out.name = "tdr(" + G.name + ")";
  out.order = G.order;
  out.is_linear = G.is_linear;
  out.shape = G.shape;
  out.eval = [G, traj](const Field& u, double t) {
    if (t < traj.t_min || t > traj.t_max)
      throw std::out_of_range("reference trajectory undefined at t = " + std::to_string(t));
    // grouped as [G(u) - G(u_s)] + u_s' so that u == u_s returns u_s' bit-for-bit
    Field g = G.eval(u, t);
    g -= G.eval(traj.u_s(t), t);
    g += traj.du_s_dt(t);
    return g;
  };
  return out;
}

enum class StepperKind { forward_euler, ssp_rk2, ssp_rk3 };

inline std::string to_string(StepperKind k)
{
  switch (k) {
    case StepperKind::forward_euler: return "forward_euler";
    case StepperKind::ssp_rk2: return "ssp_rk2";
    case StepperKind::ssp_rk3: return "ssp_rk3";
  }
  return "?";
}

inline StepperKind parse_stepper(const std::string& s)
{
  if (s == "forward_euler") return StepperKind::forward_euler;
  if (s == "ssp_rk2") return StepperKind::ssp_rk2;
  if (s == "ssp_rk3") return StepperKind::ssp_rk3;
  throw std::invalid_argument("unknown time stepper '" + s + "'");
}

struct TimeStepper
{
  StepperKind kind = StepperKind::forward_euler;
  double dt = 0.0;
};

class BlowUpError : public std::runtime_error
{
 public:
  BlowUpError(double t, const std::string& what)
      : std::runtime_error("blow-up at t = " + std::to_string(t) + ": " + what), t_(t)
  {}
  double time() const { return t_; }

 private:
  double t_;
};

namespace detail {

inline void check_stage(const Field& u, double t, int stage)
{
  if (!u.all_finite())
    throw BlowUpError(t, "non-finite value in stage " + std::to_string(stage));
}

}  // namespace detail

// One step of size dt (the stepper's dt is ignored).
inline Field advance(StepperKind kind, double dt, const SemiDiscreteOperator& op,
                     const Field& u, double t)
{
  if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
  // increment form: a vanishing operator leaves u bit-for-bit unchanged
  const Field k1 = op(u, t);
  Field u1 = u;
  u1.axpy(dt, k1);
  detail::check_stage(u1, t, 1);
  if (kind == StepperKind::forward_euler) return u1;

  const Field k2 = op(u1, t + dt);
  if (kind == StepperKind::ssp_rk2) {
    Field inc = k1;
    inc += k2;
    Field out = u;
    out.axpy(0.5 * dt, inc);
    detail::check_stage(out, t, 2);
    return out;
  }

  Field inc = k1;
  inc += k2;
  Field u2 = u;
  u2.axpy(0.25 * dt, inc);
  detail::check_stage(u2, t, 2);
  const Field k3 = op(u2, t + 0.5 * dt);
  inc.axpy(4.0, k3);
  Field out = u;
  out.axpy(dt / 6.0, inc);
  detail::check_stage(out, t, 3);
  return out;
}

inline Field advance(const TimeStepper& stepper, const SemiDiscreteOperator& op,
                     const Field& u, double t)
{
  return advance(stepper.kind, stepper.dt, op, u, t);
}

struct SimulationOptions
{
  double t_end = 0.0;
  // 0 disables periodic sampling (t = 0 and t_end are still sampled)
  double sample_every = 0.0;
  std::vector<double> snapshot_times;
  // stability bound re-evaluated every step, combined with stepper.dt by min
  std::function<double(const Field&, double)> dt_limit;
  std::function<DiagnosticsRecord(double, const Field&)> diagnostics;
  std::function<void(double, const Field&)> on_snapshot;
};

struct SimulationResult
{
  Field final;
  double t = 0.0;
  std::size_t steps = 0;
  std::vector<DiagnosticsRecord> series;
};

// Steps land exactly on every sample time, snapshot time and t_end.
inline SimulationResult run_simulation(const SemiDiscreteOperator& op, Field u0,
                                       const TimeStepper& stepper,
                                       const SimulationOptions& opts)
{
  if (!(opts.t_end >= 0.0)) throw std::invalid_argument("run_simulation: t_end < 0");
  if (!(stepper.dt > 0.0)) throw std::invalid_argument("run_simulation: dt must be positive");
  if (opts.sample_every < 0.0)
    throw std::invalid_argument("run_simulation: negative sample_every");

  std::vector<double> stops;
  if (opts.sample_every > 0.0) {
    for (std::size_t k = 1;; ++k) {
      const double ts = static_cast<double>(k) * opts.sample_every;
      if (ts >= opts.t_end * (1.0 - 1e-14)) break;
      stops.push_back(ts);
    }
  }
  std::vector<double> snaps;
  for (double ts : opts.snapshot_times)
    if (ts >= 0.0 && ts <= opts.t_end) snaps.push_back(ts);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  stops.insert(stops.end(), snaps.begin(), snaps.end());
  stops.push_back(opts.t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  auto is_sample = [&](double ts) {
    if (ts == opts.t_end) return true;
    if (!(opts.sample_every > 0.0)) return false;
    const double k = std::round(ts / opts.sample_every);
    return std::abs(ts - k * opts.sample_every) <= 1e-12 * std::max(1.0, ts);
  };
  auto is_snap = [&](double ts) {
    return std::binary_search(snaps.begin(), snaps.end(), ts);
  };

  SimulationResult res;
  res.final = std::move(u0);
  if (!res.final.all_finite()) throw BlowUpError(0.0, "non-finite initial datum");
  double t = 0.0;
  if (opts.diagnostics) res.series.push_back(opts.diagnostics(t, res.final));
  if (opts.on_snapshot && is_snap(0.0)) opts.on_snapshot(0.0, res.final);

  for (double stop : stops) {
    if (stop <= t) continue;
    while (t < stop) {
      double h = stepper.dt;
      if (opts.dt_limit) h = std::min(h, opts.dt_limit(res.final, t));
      if (!(h > 0.0) || !std::isfinite(h)) throw BlowUpError(t, "non-positive stable time step");
      bool last = false;
      if (t + h >= stop - 1e-10 * h) {
        h = stop - t;
        last = true;
      }
      res.final = advance(stepper.kind, h, op, res.final, t);
      ++res.steps;
      t = last ? stop : t + h;
    }
    if (opts.diagnostics && is_sample(stop)) res.series.push_back(opts.diagnostics(t, res.final));
    if (opts.on_snapshot && is_snap(stop)) opts.on_snapshot(t, res.final);
  }
  res.t = t;
  return res;
}

}  // namespace resideq
