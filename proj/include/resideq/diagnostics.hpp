#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mesh.hpp"

namespace resideq {

struct DiagnosticsRecord
{
  double t = 0.0;
  std::optional<double> entropy;
  std::optional<double> l1_error;
  std::optional<double> linf_error;
  std::optional<double> tv;
  std::optional<double> mass;
  std::optional<double> momentum;
  std::optional<double> energy;
  std::optional<long long> neg_cells;
  std::optional<double> froude_max;
};

struct LpErrors
{
  double l1 = 0.0;
  double linf = 0.0;
};

inline LpErrors lp_errors(const Field& u, const Field& ref, double cell_volume)
{
  u.check_same(ref);
  LpErrors e;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = std::abs(u[k] - ref[k]);
    e.l1 += d;
    e.linf = std::max(e.linf, d);
  }
  e.l1 *= cell_volume;
  return e;
}

inline LpErrors lp_errors(const Field& u, const Field& ref, const Grid1D& g)
{
  return lp_errors(u, ref, g.dx);
}

inline LpErrors lp_errors(const Field& u, const Field& ref, const Grid2D& g)
{
  return lp_errors(u, ref, g.cell_volume());
}

// |sum u log(u/u_eq)| * vol; negative cells enter through |u|
inline double relative_entropy_fp(const Field& u, const Field& u_eq, double cell_volume)
{
  u.check_same(u_eq);
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double a = std::abs(u[k]);
    if (a == 0.0) continue;
    if (!(u_eq[k] > 0.0))
      throw std::domain_error("relative_entropy_fp: equilibrium not positive where u != 0");
    s += a * std::log(a / u_eq[k]);
  }
  return std::abs(s * cell_volume);
}

inline double relative_entropy_fp(const Field& u, const Field& u_eq, const Grid1D& g)
{
  return relative_entropy_fp(u, u_eq, g.dx);
}

inline double relative_entropy_pme(const Field& u, const Field& u_eq, const Grid2D& g, double m)
{
  if (!(m > 1.0)) throw std::invalid_argument("relative_entropy_pme: m must exceed 1");
  u.check_same(u_eq);
  const double c = 2.0 / (m - 1.0);
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double a = std::pow(std::max(u[k], 0.0), m);
    const double b = std::pow(std::max(u_eq[k], 0.0), m);
    s += (u[k] - u_eq[k]) + c * (a - b);
  }
  return std::abs(s * g.cell_volume());
}

struct BoltzmannEntropy
{
  double value = 0.0;
  long long neg_cells = 0;
};

inline BoltzmannEntropy relative_entropy_boltzmann(const Field& f, const Field& M,
                                                   const Grid2D& g)
{
  f.check_same(M);
  BoltzmannEntropy out;
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] < 0.0) {
      ++out.neg_cells;
      continue;
    }
    if (f[k] == 0.0) continue;
    if (!(M[k] > 0.0))
      throw std::domain_error("relative_entropy_boltzmann: Maxwellian not positive");
    s += f[k] * std::log(f[k] / M[k]);
  }
  out.value = std::abs(s * g.cell_volume());
  return out;
}

inline double total_variation(const Field& u)
{
  if (u.components() != 1) throw std::invalid_argument("total_variation: scalar field expected");
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) tv += std::abs(u[i + 1] - u[i]);
  return tv;
}

// lambda such that value ~ C exp(-lambda t), least squares of log(value) on [t_lo, t_hi]
inline double fit_exponential_rate(const std::vector<std::pair<double, double>>& series,
                                   double t_lo, double t_hi)
{
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : series) {
    if (t < t_lo || t > t_hi) continue;
    if (!(v > 0.0))
      throw std::domain_error("fit_exponential_rate: non-positive value at t = " +
                              std::to_string(t));
    pts.emplace_back(t, std::log(v));
  }
  if (pts.size() < 3) throw std::invalid_argument("fit_exponential_rate: fewer than 3 samples");
  double mt = 0.0, my = 0.0;
  for (const auto& [t, y] : pts) {
    mt += t;
    my += y;
  }
  mt /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double stt = 0.0, sty = 0.0;
  for (const auto& [t, y] : pts) {
    stt += (t - mt) * (t - mt);
    sty += (t - mt) * (y - my);
  }
  if (!(stt > 0.0)) throw std::invalid_argument("fit_exponential_rate: degenerate time window");
  return -sty / stt;
}

inline const char* diagnostics_csv_header()
{
  return "time,entropy,l1_error,linf_error,tv,mass,momentum,energy,neg_cells,froude_max";
}

inline void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& rows)
{
  auto put = [&os](const std::optional<double>& v) {
    os << ',';
    if (v) {
      std::ostringstream s;
      s.precision(17);
      s << *v;
      os << s.str();
    }
  };
  os << diagnostics_csv_header() << '\n';
  for (const auto& r : rows) {
    std::ostringstream t;
    t.precision(17);
    t << r.t;
    os << t.str();
    put(r.entropy);
    put(r.l1_error);
    put(r.linf_error);
    put(r.tv);
    put(r.mass);
    put(r.momentum);
    put(r.energy);
    os << ',';
    if (r.neg_cells) os << *r.neg_cells;
    put(r.froude_max);
    os << '\n';
  }
}

}  // namespace resideq
