#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace resideq {

struct LimiterConfig
{
  double alpha = 2.0;
  double epsilon = 1e-14;

  void validate() const
  {
    if (!(alpha > 1.0)) throw std::invalid_argument("LimiterConfig: alpha must exceed 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("LimiterConfig: epsilon must be positive");
  }
};

// r^alpha on (0,1], r^-alpha above 1, 0 for r <= 0
inline double phi(double r, const LimiterConfig& cfg)
{
  if (!(r > 0.0)) return 0.0;
  if (r <= 1.0) return std::pow(r, cfg.alpha);
  return std::pow(r, -cfg.alpha);
}

inline double indicator_scalar(double d_num, double d_eq, const LimiterConfig& cfg,
                               double scale = 1.0)
{
  if (d_num == d_eq) return 1.0;
  const double tol = cfg.epsilon * scale;
  const bool num_small = std::abs(d_num) <= tol;
  const bool eq_small = std::abs(d_eq) <= tol;
  if (num_small && eq_small) return 1.0;
  if (eq_small) return std::abs(d_num) / tol;
  return d_num / d_eq;
}

inline double indicator_system(const std::array<double, 2>& d_num,
                               const std::array<double, 2>& d_eq, const LimiterConfig& cfg,
                               double scale = 1.0)
{
  if (d_num == d_eq) return 1.0;
  const double tol = cfg.epsilon * scale;
  const double n = std::abs(d_num[0]) + std::abs(d_num[1]);
  const double e = std::abs(d_eq[0]) + std::abs(d_eq[1]);
  if (n <= tol && e <= tol) return 1.0;
  return n / (e + tol);
}

}  // namespace resideq
