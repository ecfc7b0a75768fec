#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mesh.hpp"
#include "re_core.hpp"

namespace resideq {

struct FPParams
{
  Grid1D grid;
  double u_mean = 0.0;
  double T = 1.0;

  void validate() const
  {
    if (!(T > 0.0)) throw std::invalid_argument("FPParams: temperature must be positive");
    if (grid.n_cells < 2) throw std::invalid_argument("FPParams: grid not initialised");
  }
};

struct Moments
{
  double rho = 0.0;
  double momentum = 0.0;
  double temperature = 0.0;
};

class NonAdmissibleState : public std::domain_error
{
 public:
  using std::domain_error::domain_error;
};

inline Field maxwellian(const FPParams& p, double rho)
{
  p.validate();
  if (!(rho > 0.0)) throw std::invalid_argument("maxwellian: rho must be positive");
  const double c = rho / std::sqrt(2.0 * std::numbers::pi * p.T);
  return project_function(p.grid, [&](double v) {
    const double d = v - p.u_mean;
    return c * std::exp(-d * d / (2.0 * p.T));
  });
}

inline Moments moments(const Field& f, const Grid1D& grid)
{
  if (f.components() != 1 || f.size() != grid.n_cells)
    throw std::invalid_argument("moments: scalar field on the grid expected");
  Moments m;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    m.rho += f[i];
    m.momentum += f[i] * grid.centers[i];
  }
  m.rho *= grid.dx;
  m.momentum *= grid.dx;
  if (!(m.rho > 0.0)) throw NonAdmissibleState("moments: non-positive mass");
  const double u = m.momentum / m.rho;
  double e = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double d = grid.centers[i] - u;
    e += f[i] * d * d;
  }
  m.temperature = e * grid.dx / m.rho;
  return m;
}

inline double mass(const Field& f, double cell_volume)
{
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k];
  return s * cell_volume;
}

// Maxwellian rescaled so its midpoint-rule mass equals target_mass.
inline Field discrete_maxwellian(const FPParams& p, double target_mass)
{
  const Field unit = maxwellian(p, 1.0);
  return maxwellian(p, target_mass / mass(unit, p.grid.dx));
}

// Weight on f_i in the drift flux of the exponential-fitting scheme.
inline double chang_cooper_delta(double w)
{
  if (std::abs(w) < 0.05) {
    const double w2 = w * w;
    return 0.5 - w * (1.0 / 12.0 - w2 * (1.0 / 720.0 - w2 / 30240.0));
  }
  return 1.0 / w - 1.0 / std::expm1(w);
}

namespace detail {

// J_{i+1/2} = a [(1 - d) f_{i+1} + d f_i] + T (f_{i+1} - f_i)/dx,  a = v_{i+1/2} - u,
// G_i = (J_{i+1/2} - J_{i-1/2})/dx with J = 0 at both ends.
template <class Weight>
SemiDiscreteOperator fp_flux_operator(const FPParams& p, std::string name, int order,
                                      Weight weight)
{
  p.validate();
  const std::size_t n = p.grid.n_cells;
  std::vector<double> a(n - 1), d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    a[k] = p.grid.edge(static_cast<std::ptrdiff_t>(k)) - p.u_mean;
    d[k] = weight(a[k]);
  }
  SemiDiscreteOperator op;
  op.name = std::move(name);
  op.order = order;
  op.is_linear = true;
  op.shape = shape_of(p.grid);
  const double dx = p.grid.dx, T = p.T;
  op.eval = [n, a, d, dx, T](const Field& f, double) {
    Field g(f.shape());
    double left = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double right = 0.0;
      if (i + 1 < n) {
        right = a[i] * ((1.0 - d[i]) * f[i + 1] + d[i] * f[i]) + T * (f[i + 1] - f[i]) / dx;
      }
      g[i] = (right - left) / dx;
      left = right;
    }
    return g;
  };
  return op;
}

}  // namespace detail

inline SemiDiscreteOperator fp_upwind(const FPParams& p)
{
  return detail::fp_flux_operator(p, "fp_upwind", 1,
                                  [](double a) { return a > 0.0 ? 0.0 : 1.0; });
}

inline SemiDiscreteOperator fp_central(const FPParams& p)
{
  return detail::fp_flux_operator(p, "fp_central", 2, [](double) { return 0.5; });
}

inline SemiDiscreteOperator fp_chang_cooper(const FPParams& p)
{
  const double dx = p.grid.dx, T = p.T;
  return detail::fp_flux_operator(p, "fp_chang_cooper", 2, [dx, T](double a) {
    return chang_cooper_delta(dx * a / T);
  });
}

inline SemiDiscreteOperator bgk_operator(const FPParams& p, double mu, double rho_target)
{
  if (!(mu > 0.0)) throw std::invalid_argument("bgk_operator: mu must be positive");
  Field M = maxwellian(p, rho_target);
  SemiDiscreteOperator op;
  op.name = "bgk";
  op.order = 2;
  op.is_linear = false;
  op.shape = M.shape();
  op.eval = [M, mu](const Field& f, double) {
    Field g = M;
    g -= f;
    g *= mu;
    return g;
  };
  return op;
}

// Two Gaussian bumps centred at -2.5 and 2.5.
inline double fp_two_gaussians(double v)
{
  return std::exp(-5.0 * (v + 2.5) * (v + 2.5)) + std::exp(-5.0 * (v - 2.5) * (v - 2.5));
}

}  // namespace resideq
