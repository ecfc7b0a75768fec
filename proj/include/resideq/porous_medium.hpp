#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mesh.hpp"
#include "re_core.hpp"

namespace resideq {

struct PMEParams
{
  Grid2D grid;
  double m = 5.0;

  void validate() const
  {
    if (!(m > 1.0)) throw std::invalid_argument("PMEParams: m must exceed 1");
    if (grid.nx() < 2 || grid.ny() < 1) throw std::invalid_argument("PMEParams: empty grid");
  }
};

struct BarenblattProfile
{
  double C = 0.0;
  Field field;
};

inline double barenblatt_value(double C, double m, double r2)
{
  const double b = C - (m - 1.0) / (2.0 * m) * r2;
  return b > 0.0 ? std::pow(b, 1.0 / (m - 1.0)) : 0.0;
}

inline Field barenblatt_field(const PMEParams& p, double C)
{
  return project_function(p.grid, [&](double x, double y) {
    return barenblatt_value(C, p.m, x * x + y * y);
  });
}

inline BarenblattProfile barenblatt(const PMEParams& p, double target_mass)
{
  p.validate();
  if (!(target_mass > 0.0)) throw std::invalid_argument("barenblatt: target mass must be positive");
  const double vol = p.grid.cell_volume();
  auto mass_of = [&](double C) {
    const Field f = barenblatt_field(p, C);
    double s = 0.0;
    for (double v : f.data()) s += v;
    return s * vol;
  };
  double lo = 0.0, hi = 1.0;
  while (mass_of(hi) < target_mass) {
    hi *= 2.0;
    if (hi > 1e12) throw std::domain_error("barenblatt: cannot bracket the mass constant");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass_of(mid) < target_mass ? lo : hi) = mid;
  }
  const double C = 0.5 * (lo + hi);
  const double radius = std::sqrt(2.0 * p.m * C / (p.m - 1.0));
  const double room_x = std::min(-p.grid.x.x_min, p.grid.x.x_max) - 2.0 * p.grid.dx();
  const double room_y = std::min(-p.grid.y.x_min, p.grid.y.x_max) - 2.0 * p.grid.dy();
  if (radius > std::min(room_x, room_y))
    throw std::domain_error("barenblatt: support radius " + std::to_string(radius) +
                            " reaches within two cells of the boundary");
  return {C, barenblatt_field(p, C)};
}

// du/dt = div(v u) + lap(u^m), zero flux on all sides.
inline SemiDiscreteOperator pme_upwind(const PMEParams& p)
{
  p.validate();
  SemiDiscreteOperator op;
  op.name = "pme_upwind";
  op.order = 1;
  op.is_linear = false;
  op.shape = shape_of(p.grid);
  op.eval = [grid = p.grid, m = p.m](const Field& u, double) {
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const double dx = grid.dx(), dy = grid.dy();
    std::vector<double> um(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) um[k] = std::pow(std::max(u[k], 0.0), m);
    Field g(u.shape());
    // x-direction interfaces between (i, j) and (i+1, j)
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double xe = grid.x.edge(static_cast<std::ptrdiff_t>(i));
      for (std::size_t j = 0; j < ny; ++j) {
        const std::size_t a = grid.index(i, j), b = grid.index(i + 1, j);
        const double J = xe * (xe > 0.0 ? u[b] : u[a]) + (um[b] - um[a]) / dx;
        g[a] += J / dx;
        g[b] -= J / dx;
      }
    }
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j + 1 < ny; ++j) {
        const double ye = grid.y.edge(static_cast<std::ptrdiff_t>(j));
        const std::size_t a = grid.index(i, j), b = grid.index(i, j + 1);
        const double J = ye * (ye > 0.0 ? u[b] : u[a]) + (um[b] - um[a]) / dy;
        g[a] += J / dy;
        g[b] -= J / dy;
      }
    return g;
  };
  return op;
}

inline double pme_stable_dt(const PMEParams& p, const Field& u)
{
  constexpr double safety = 0.9;
  constexpr double eps = 1e-12;
  const double h = std::min(p.grid.dx(), p.grid.dy());
  double umax = eps;
  for (double v : u.data()) umax = std::max(umax, v);
  const double parabolic = safety * h * h / (4.0 * p.m * std::pow(umax, p.m - 1.0));
  const double vx = std::max(std::abs(p.grid.x.x_min), std::abs(p.grid.x.x_max));
  const double vy = std::max(std::abs(p.grid.y.x_min), std::abs(p.grid.y.x_max));
  const double confinement = h / std::max(vx, vy);
  return std::min(parabolic, confinement);
}

inline double pme_gaussian_ring(double x, double y)
{
  const double r2 = x * x + y * y;
  return r2 * std::exp(-r2 / 2.0);
}

}  // namespace resideq
