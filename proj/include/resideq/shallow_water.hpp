#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "eq_limiter.hpp"
#include "mesh.hpp"
#include "re_core.hpp"

namespace resideq {

struct SWEBoundary
{
  enum class Kind { reflective_walls, inflow_outflow };
  Kind kind = Kind::reflective_walls;
  double q_in = 0.0;
  double h_out = 0.0;

  static SWEBoundary reflective_walls() { return {}; }
  static SWEBoundary inflow_outflow(double q_in, double h_out)
  {
    if (!(h_out > 0.0)) throw std::invalid_argument("inflow_outflow: h_out must be positive");
    return {Kind::inflow_outflow, q_in, h_out};
  }
};

struct SWEParams
{
  double g = 1.0;
  Grid1D grid;
  Field topography;
  SWEBoundary boundary;

  void validate() const
  {
    if (!(g > 0.0)) throw std::invalid_argument("SWEParams: g must be positive");
    if (topography.size() != grid.n_cells || topography.components() != 1)
      throw std::invalid_argument("SWEParams: topography must be a scalar field on the grid");
    if (!topography.all_finite()) throw std::invalid_argument("SWEParams: non-finite topography");
  }
};

using Vec2 = std::array<double, 2>;

inline Vec2 swe_flux(double h, double hv, double g)
{
  if (!(h > 0.0)) throw std::domain_error("swe_flux: dry state h = " + std::to_string(h));
  return {hv, hv * hv / h + 0.5 * g * h * h};
}

inline double van_leer_psi(double theta)
{
  if (std::isinf(theta)) return theta > 0.0 ? 2.0 : 0.0;
  return (theta + std::abs(theta)) / (1.0 + std::abs(theta));
}

// psi(dm/dp) * dp written without the division
inline double van_leer_slope(double dm, double dp)
{
  const double p = dm * dp;
  return p > 0.0 ? 2.0 * p / (dm + dp) : 0.0;
}

// Interface fluxes F_{i+1/2}, i = -1..N-1 (N+1 entries) and cell sources.
struct LF2Terms
{
  std::vector<Vec2> flux;
  std::vector<Vec2> source;
};

inline LF2Terms lf2_terms(const SWEParams& p, const Field& u, double t = 0.0)
{
  const std::size_t n = p.grid.n_cells;
  const double g = p.g, dx = p.grid.dx;
  std::vector<double> h(n + 4), m(n + 4);
  for (std::size_t i = 0; i < n; ++i) {
    h[i + 2] = u.at(i, 0);
    m[i + 2] = u.at(i, 1);
    if (!(h[i + 2] > 0.0))
      throw BlowUpError(t, "dry state in cell " + std::to_string(i));
  }
  if (p.boundary.kind == SWEBoundary::Kind::reflective_walls) {
    h[1] = h[2], h[0] = h[3], h[n + 2] = h[n + 1], h[n + 3] = h[n];
    m[1] = -m[2], m[0] = -m[3], m[n + 2] = -m[n + 1], m[n + 3] = -m[n];
  } else {
    h[1] = h[0] = h[2];
    m[1] = m[0] = p.boundary.q_in;
    h[n + 2] = h[n + 3] = p.boundary.h_out;
    m[n + 2] = m[n + 3] = m[n + 1];
  }
  std::vector<double> sh(n + 4, 0.0), sm(n + 4, 0.0), speed(n + 4, 0.0);
  for (std::size_t j = 1; j + 1 < n + 4; ++j) {
    sh[j] = van_leer_slope(h[j] - h[j - 1], h[j + 1] - h[j]);
    sm[j] = van_leer_slope(m[j] - m[j - 1], m[j + 1] - m[j]);
  }
  for (std::size_t j = 0; j < n + 4; ++j) speed[j] = std::abs(m[j] / h[j]) + std::sqrt(g * h[j]);

  LF2Terms out;
  out.flux.resize(n + 1);
  out.source.resize(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t a = k + 1, b = k + 2;
    const double hl = h[a] + 0.5 * sh[a], ml = m[a] + 0.5 * sm[a];
    const double hr = h[b] - 0.5 * sh[b], mr = m[b] - 0.5 * sm[b];
    if (!(hl > 0.0) || !(hr > 0.0))
      throw BlowUpError(t, "dry reconstruction at interface " + std::to_string(k));
    const Vec2 fl = swe_flux(hl, ml, g), fr = swe_flux(hr, mr, g);
    const double s = std::max(speed[a], speed[b]);
    out.flux[k] = {0.5 * (fl[0] + fr[0]) - 0.5 * s * (hr - hl),
                   0.5 * (fl[1] + fr[1]) - 0.5 * s * (mr - ml)};
  }
  const std::vector<double>& B = p.topography.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double bl = B[i == 0 ? 0 : i - 1], br = B[i + 1 == n ? n - 1 : i + 1];
    out.source[i] = {0.0, -g * h[i + 2] * (br - bl) / (2.0 * dx)};
  }
  return out;
}

namespace detail {

inline SemiDiscreteOperator swe_operator_shell(const SWEParams& p, std::string name)
{
  p.validate();
  SemiDiscreteOperator op;
  op.name = std::move(name);
  op.order = 2;
  op.is_linear = false;
  op.shape = shape_of(p.grid, 2);
  return op;
}

}  // namespace detail

inline SemiDiscreteOperator lf2_operator(const SWEParams& p)
{
  auto op = detail::swe_operator_shell(p, "lf2");
  op.eval = [p](const Field& u, double t) {
    const LF2Terms T = lf2_terms(p, u, t);
    const double dx = p.grid.dx;
    Field out(u.shape());
    for (std::size_t i = 0; i < p.grid.n_cells; ++i)
      for (std::size_t c = 0; c < 2; ++c)
        out.at(i, c) = -(T.flux[i + 1][c] - T.flux[i][c]) / dx + T.source[i][c];
    return out;
  };
  return op;
}

// Flux-and-source subtraction: F^um - F^eq at each interface, R - R^eq per cell.
inline SemiDiscreteOperator relf_operator(const SWEParams& p, const Field& eq_state)
{
  auto op = detail::swe_operator_shell(p, "relf");
  if (!(eq_state.shape() == op.shape))
    throw std::invalid_argument("relf_operator: equilibrium shape mismatch");
  const LF2Terms E = lf2_terms(p, eq_state);
  op.eval = [p, E](const Field& u, double t) {
    const LF2Terms T = lf2_terms(p, u, t);
    const double dx = p.grid.dx;
    Field out(u.shape());
    for (std::size_t i = 0; i < p.grid.n_cells; ++i)
      for (std::size_t c = 0; c < 2; ++c)
        out.at(i, c) = -((T.flux[i + 1][c] - E.flux[i + 1][c]) - (T.flux[i][c] - E.flux[i][c])) / dx +
                       (T.source[i][c] - E.source[i][c]);
    return out;
  };
  return op;
}

// The generic wrapper applied to lf2.
inline SemiDiscreteOperator relf_global_operator(const SWEParams& p, const Field& eq_state)
{
  const auto G = lf2_operator(p);
  return residual_equilibrium_operator(G, make_equilibrium(G, eq_state));
}

inline std::vector<double> swe_limiter_weights(const LF2Terms& T, const LF2Terms& E,
                                               const LimiterConfig& cfg,
                                               const std::function<double(double)>& phi_fn)
{
  const std::size_t n = T.source.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 dn{T.flux[i + 1][0] - T.flux[i][0], T.flux[i + 1][1] - T.flux[i][1]};
    const Vec2 de{E.flux[i + 1][0] - E.flux[i][0], E.flux[i + 1][1] - E.flux[i][1]};
    double scale = 0.0;
    for (std::size_t c = 0; c < 2; ++c)
      scale = std::max(scale, std::abs(T.flux[i + 1][c]) + std::abs(E.flux[i + 1][c]) +
                                  std::abs(T.flux[i][c]) + std::abs(E.flux[i][c]));
    w[i] = phi_fn(indicator_system(dn, de, cfg, scale + 1.0));
  }
  return w;
}

// F^um_{i+-1/2} - phi_i F^eq_{i+-1/2}, R_i - phi_i R^eq_i; phi_fn maps the indicator to phi.
inline SemiDiscreteOperator fl_relf_operator(const SWEParams& p, const Field& eq_state,
                                             const LimiterConfig& cfg,
                                             std::function<double(double)> phi_fn)
{
  cfg.validate();
  auto op = detail::swe_operator_shell(p, "fl_relf");
  if (!(eq_state.shape() == op.shape))
    throw std::invalid_argument("fl_relf_operator: equilibrium shape mismatch");
  const LF2Terms E = lf2_terms(p, eq_state);
  op.eval = [p, E, cfg, phi_fn](const Field& u, double t) {
    const LF2Terms T = lf2_terms(p, u, t);
    const auto w = swe_limiter_weights(T, E, cfg, phi_fn);
    const double dx = p.grid.dx;
    Field out(u.shape());
    for (std::size_t i = 0; i < p.grid.n_cells; ++i)
      for (std::size_t c = 0; c < 2; ++c)
        out.at(i, c) =
            -((T.flux[i + 1][c] - w[i] * E.flux[i + 1][c]) - (T.flux[i][c] - w[i] * E.flux[i][c])) / dx +
            (T.source[i][c] - w[i] * E.source[i][c]);
    return out;
  };
  return op;
}

inline SemiDiscreteOperator fl_relf_operator(const SWEParams& p, const Field& eq_state,
                                             const LimiterConfig& cfg)
{
  return fl_relf_operator(p, eq_state, cfg, [cfg](double r) { return phi(r, cfg); });
}

inline SemiDiscreteOperator fl_relf_operator(const SWEParams& p, const Field& eq_state,
                                             double alpha)
{
  LimiterConfig cfg;
  cfg.alpha = alpha;
  return fl_relf_operator(p, eq_state, cfg);
}

inline double lake_topography(double x)
{
  if (std::abs(x - 0.5) < 0.1) return 0.25 * (std::cos(std::numbers::pi * (x - 0.5) / 0.1) + 1.0);
  return 0.0;
}

inline double transcritical_topography(double x)
{
  if (std::abs(x - 10.0) < 2.0) return 0.2 - 0.05 * (x - 10.0) * (x - 10.0);
  return 0.0;
}

inline Field lake_at_rest_equilibrium(const SWEParams& p)
{
  p.validate();
  Field u(shape_of(p.grid, 2));
  for (std::size_t i = 0; i < p.grid.n_cells; ++i) {
    const double B = p.topography[i];
    if (!(B < 1.0)) throw std::domain_error("lake_at_rest_equilibrium: topography reaches the surface");
    u.at(i, 0) = 1.0 - B;
    u.at(i, 1) = 0.0;
  }
  return u;
}

inline Field lake_perturbed_state(const SWEParams& p, double eps)
{
  Field u = lake_at_rest_equilibrium(p);
  for (std::size_t i = 0; i < p.grid.n_cells; ++i) {
    const double x = p.grid.centers[i];
    if (x > 0.1 && x < 0.2) u.at(i, 0) += eps;
  }
  return u;
}

// q^2/(2h^2) + g (h + B)
inline double bernoulli(double h, double B, double q, double g)
{
  return q * q / (2.0 * h * h) + g * (h + B);
}

inline double critical_depth(double q, double g) { return std::cbrt(q * q / g); }

// Root of bernoulli(h, B) = E on the sub- (h >= h_c) or supercritical (h <= h_c) branch.
// Returns h_c when the level E is below the branch minimum.
inline double bernoulli_depth(double E, double B, double q, double g, bool subcritical)
{
  const double hc = critical_depth(q, g);
  auto f = [&](double h) { return bernoulli(h, B, q, g) - E; };
  if (f(hc) >= 0.0) return hc;
  double lo, hi;
  if (subcritical) {
    lo = hc;
    hi = 2.0 * hc;
    while (f(hi) < 0.0) {
      hi *= 2.0;
      if (hi > 1e12) throw std::domain_error("bernoulli_depth: no subcritical root");
    }
  } else {
    hi = hc;
    lo = 0.5 * hc;
    while (f(lo) < 0.0) {
      lo *= 0.5;
      if (lo < 1e-300) throw std::domain_error("bernoulli_depth: no supercritical root");
    }
  }
  // safeguarded Newton: f changes sign on [lo, hi]
  double h = subcritical ? hi : lo;
  for (int it = 0; it < 200; ++it) {
    const double fh = f(h);
    if (fh == 0.0) return h;
    const bool pos = fh > 0.0;
    // f > 0 at hi on the subcritical branch, at lo on the supercritical one
    if (subcritical == pos) hi = h;
    else lo = h;
    const double df = -q * q / (h * h * h) + g;
    double next = h - fh / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - h) <= 4e-16 * h || hi - lo <= 4e-16 * hi) return next;
    h = next;
  }
  throw std::runtime_error("bernoulli_depth: Newton did not converge");
}

struct TranscriticalEquilibrium
{
  Field state;
  double x_shock = 0.0;
  double h_c = 0.0;
  double E_crit = 0.0;
  double E_out = 0.0;
  double x_crest = 10.0;
  std::vector<int> branch;  // 0: upstream subcritical, 1: supercritical, 2: downstream subcritical
};

inline double momentum_flux(double h, double q, double g) { return q * q / h + 0.5 * g * h * h; }

inline TranscriticalEquilibrium transcritical_equilibrium(const SWEParams& p, double q,
                                                          double h_out,
                                                          const std::function<double(double)>& B,
                                                          double x_crest = 10.0)
{
  p.validate();
  if (!(q > 0.0)) throw std::invalid_argument("transcritical_equilibrium: q must be positive");
  TranscriticalEquilibrium eq;
  const double g = p.g;
  eq.h_c = critical_depth(q, g);
  eq.x_crest = x_crest;
  if (!(h_out > eq.h_c))
    throw std::invalid_argument("transcritical_equilibrium: h_out below the critical depth");
  eq.E_crit = bernoulli(eq.h_c, B(x_crest), q, g);
  eq.E_out = bernoulli(h_out, 0.0, q, g);

  auto jump = [&](double x) {
    const double b = B(x);
    const double hm = bernoulli_depth(eq.E_crit, b, q, g, false);
    const double hp = bernoulli_depth(eq.E_out, b, q, g, true);
    return momentum_flux(hm, q, g) - momentum_flux(hp, q, g);
  };
  // the downstream subcritical branch exists only once B has dropped enough
  auto admissible = [&](double x) { return bernoulli(eq.h_c, B(x), q, g) < eq.E_out; };
  const double step = p.grid.dx;
  double lo = x_crest;
  while (lo <= p.grid.x_max && !admissible(lo)) lo += step;
  double hi = lo;
  double jl = lo <= p.grid.x_max ? jump(lo) : 0.0;
  bool found = false;
  for (double x = lo + step; x <= p.grid.x_max; x += step) {
    if ((jump(x) > 0.0) != (jl > 0.0)) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
  }
  if (!found) throw std::domain_error("transcritical_equilibrium: no shock position in the lee");
  jl = jump(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double jm = jump(mid);
    if ((jm > 0.0) == (jl > 0.0)) {
      lo = mid;
      jl = jm;
    } else {
      hi = mid;
    }
  }
  eq.x_shock = 0.5 * (lo + hi);

  const std::size_t n = p.grid.n_cells;
  eq.state = Field(shape_of(p.grid, 2));
  eq.branch.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = p.grid.centers[i];
    const double b = p.topography[i];
    double h;
    if (x < x_crest) {
      h = bernoulli_depth(eq.E_crit, b, q, g, true);
      eq.branch[i] = 0;
    } else if (x < eq.x_shock) {
      h = bernoulli_depth(eq.E_crit, b, q, g, false);
      eq.branch[i] = 1;
    } else {
      h = bernoulli_depth(eq.E_out, b, q, g, true);
      eq.branch[i] = 2;
    }
    eq.state.at(i, 0) = h;
    eq.state.at(i, 1) = q;
  }
  return eq;
}

inline TranscriticalEquilibrium transcritical_equilibrium(const SWEParams& p, double q,
                                                          double h_out)
{
  return transcritical_equilibrium(p, q, h_out, transcritical_topography, 10.0);
}

inline double froude_max(const SWEParams& p, const Field& u)
{
  double fr = 0.0;
  for (std::size_t i = 0; i < p.grid.n_cells; ++i) {
    const double h = u.at(i, 0);
    fr = std::max(fr, std::abs(u.at(i, 1) / h) / std::sqrt(p.g * h));
  }
  return fr;
}

inline double swe_max_speed(const SWEParams& p, const Field& u)
{
  double s = 0.0;
  for (std::size_t i = 0; i < p.grid.n_cells; ++i) {
    const double h = u.at(i, 0);
    s = std::max(s, std::abs(u.at(i, 1) / h) + std::sqrt(p.g * std::max(h, 0.0)));
  }
  return s;
}

inline double swe_stable_dt(const SWEParams& p, const Field& u, double cfl = 0.9)
{
  const double s = swe_max_speed(p, u);
  return s > 0.0 ? cfl * p.grid.dx / s : std::numeric_limits<double>::infinity();
}

inline SWEParams make_swe_params(const Grid1D& grid, double g,
                                 const std::function<double(double)>& B, SWEBoundary bc)
{
  SWEParams p;
  p.g = g;
  p.grid = grid;
  p.topography = project_function(grid, B);
  p.boundary = bc;
  p.validate();
  return p;
}

}  // namespace resideq
