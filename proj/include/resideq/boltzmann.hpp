#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mesh.hpp"
#include "re_core.hpp"

namespace resideq {

// Fourier-Galerkin collision table in Carleman form:
//   Q^_k = (1/pi) sum_{l+m=k} f^_l f^_m [beta(l,m) - beta(m,m)],
//   beta(l,m) = (pi/M) sum_p phi(l.e_p) phi(m.e_p^perp),  phi(s) = 2R sinc(pi R |s| / L).
struct KernelModes
{
  int n = 0;
  std::vector<std::size_t> offset;  // n*n + 1 entries into the arrays below
  std::vector<int> l_index;
  std::vector<int> m_index;
  std::vector<double> weight;

  std::size_t entries() const { return weight.size(); }
};

struct SpectralPlans
{
  int n = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit SpectralPlans(int n_) : n(n_)
  {
    const std::size_t sz = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    auto* a = fftw_alloc_complex(sz);
    auto* b = fftw_alloc_complex(sz);
    forward = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    if (!forward || !backward) throw std::runtime_error("SpectralPlans: FFTW planning failed");
  }
  SpectralPlans(const SpectralPlans&) = delete;
  SpectralPlans& operator=(const SpectralPlans&) = delete;
  ~SpectralPlans()
  {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

struct SpectralConfig
{
  int n_modes = 32;
  double L = 8.0;
  int m_angles = 8;
  int threads = 1;

  std::shared_ptr<const KernelModes> kernel_modes;
  std::shared_ptr<const SpectralPlans> plans;

  double support_radius() const { return 2.0 * L / (3.0 + std::numbers::sqrt2); }
  double truncation_radius() const { return std::numbers::sqrt2 * support_radius(); }
};

inline double kernel_phi(double s, double R, double L)
{
  const double x = std::numbers::pi * R * std::abs(s) / L;
  return 2.0 * R * (x == 0.0 ? 1.0 : std::sin(x) / x);
}

inline double kernel_beta(const SpectralConfig& c, int l1, int l2, int m1, int m2)
{
  const double R = c.truncation_radius();
  double s = 0.0;
  for (int p = 0; p < c.m_angles; ++p) {
    const double th = std::numbers::pi * (p + 0.5) / c.m_angles;
    const double co = std::cos(th), si = std::sin(th);
    s += kernel_phi(l1 * co + l2 * si, R, c.L) * kernel_phi(-m1 * si + m2 * co, R, c.L);
  }
  return std::numbers::pi / c.m_angles * s;
}

inline KernelModes build_kernel_modes(const SpectralConfig& c)
{
  const int n = c.n_modes, h = n / 2;
  KernelModes km;
  km.n = n;
  // beta tabulated on all (l, m) pairs once; n^4 doubles
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  const double R = c.truncation_radius();
  std::vector<double> pl(static_cast<std::size_t>(c.m_angles) * n2);
  std::vector<double> pm(static_cast<std::size_t>(c.m_angles) * n2);
  for (int p = 0; p < c.m_angles; ++p) {
    const double th = std::numbers::pi * (p + 0.5) / c.m_angles;
    const double co = std::cos(th), si = std::sin(th);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int k1 = a - h, k2 = b - h;
        const std::size_t idx = static_cast<std::size_t>(p) * n2 + a * n + b;
        pl[idx] = kernel_phi(k1 * co + k2 * si, R, c.L);
        pm[idx] = kernel_phi(-k1 * si + k2 * co, R, c.L);
      }
  }
  auto beta = [&](std::size_t l, std::size_t m) {
    double s = 0.0;
    for (int p = 0; p < c.m_angles; ++p) s += pl[p * n2 + l] * pm[p * n2 + m];
    return std::numbers::pi / c.m_angles * s;
  };
  km.offset.reserve(n2 + 1);
  km.offset.push_back(0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int k1 = a - h, k2 = b - h;
      for (int la = 0; la < n; ++la)
        for (int lb = 0; lb < n; ++lb) {
          const int m1 = k1 - (la - h), m2 = k2 - (lb - h);
          if (m1 < -h || m1 >= h || m2 < -h || m2 >= h) continue;
          const std::size_t l = static_cast<std::size_t>(la) * n + lb;
          const std::size_t m = static_cast<std::size_t>(m1 + h) * n + (m2 + h);
          km.l_index.push_back(static_cast<int>(l));
          km.m_index.push_back(static_cast<int>(m));
          km.weight.push_back(beta(l, m) - beta(m, m));
        }
      km.offset.push_back(km.weight.size());
    }
  return km;
}

inline SpectralConfig make_spectral_config(int n_modes, double L, int m_angles, int threads = 1)
{
  if (n_modes < 2 || n_modes % 2 != 0)
    throw std::invalid_argument("SpectralConfig: n_modes must be even and >= 2");
  if (!(L > 0.0)) throw std::invalid_argument("SpectralConfig: L must be positive");
  if (m_angles < 1) throw std::invalid_argument("SpectralConfig: m_angles must be positive");
  SpectralConfig c;
  c.n_modes = n_modes;
  c.L = L;
  c.m_angles = m_angles;
  c.threads = std::max(1, threads);
  c.kernel_modes = std::make_shared<const KernelModes>(build_kernel_modes(c));
  c.plans = std::make_shared<const SpectralPlans>(n_modes);
  return c;
}

inline Grid2D velocity_grid(const SpectralConfig& c)
{
  return make_grid_2d(c.n_modes, -c.L, c.L, c.n_modes, -c.L, c.L);
}

namespace detail {

using cplx = std::complex<double>;

struct FftwBuffer
{
  fftw_complex* p;
  explicit FftwBuffer(std::size_t n) : p(fftw_alloc_complex(n))
  {
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  cplx* c() { return reinterpret_cast<cplx*>(p); }
};

// cell-centre phase e^{-i pi k (-L + h/2) / L}
inline std::vector<cplx> spectral_phase(int n)
{
  std::vector<cplx> ph(n);
  for (int a = 0; a < n; ++a) {
    const int k = a - n / 2;
    const double arg = -std::numbers::pi * k * (-1.0 + 1.0 / n);
    ph[a] = {std::cos(arg), std::sin(arg)};
  }
  return ph;
}

// modes ordered k = -n/2 .. n/2-1 per axis
inline std::vector<cplx> to_modes(const SpectralConfig& c, const Field& f)
{
  const int n = c.n_modes;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  FftwBuffer in(n2), out(n2);
  for (std::size_t k = 0; k < n2; ++k) in.c()[k] = f[k];
  fftw_execute_dft(c.plans->forward, in.p, out.p);
  const auto ph = spectral_phase(n);
  std::vector<cplx> modes(n2);
  const double inv = 1.0 / static_cast<double>(n2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int pa = (a - n / 2 + n) % n, pb = (b - n / 2 + n) % n;
      modes[static_cast<std::size_t>(a) * n + b] =
          out.c()[static_cast<std::size_t>(pa) * n + pb] * ph[a] * ph[b] * inv;
    }
  return modes;
}

inline Field from_modes(const SpectralConfig& c, const std::vector<cplx>& modes)
{
  const int n = c.n_modes;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  FftwBuffer in(n2), out(n2);
  const auto ph = spectral_phase(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int pa = (a - n / 2 + n) % n, pb = (b - n / 2 + n) % n;
      in.c()[static_cast<std::size_t>(pa) * n + pb] =
          modes[static_cast<std::size_t>(a) * n + b] / (ph[a] * ph[b]);
    }
  fftw_execute_dft(c.plans->backward, in.p, out.p);
  Field q(FieldShape{static_cast<std::size_t>(n), static_cast<std::size_t>(n), 1});
  for (std::size_t k = 0; k < n2; ++k) q[k] = out.c()[k].real();
  return q;
}

}  // namespace detail

inline std::vector<std::complex<double>> collision_modes(const SpectralConfig& c,
                                                         const std::vector<std::complex<double>>& fh,
                                                         const std::vector<std::complex<double>>& gh)
{
  const KernelModes& km = *c.kernel_modes;
  const std::size_t n2 = static_cast<std::size_t>(km.n) * km.n;
  std::vector<std::complex<double>> qh(n2);
  auto work = [&](std::size_t k0, std::size_t k1) {
    for (std::size_t k = k0; k < k1; ++k) {
      std::complex<double> s = 0.0;
      for (std::size_t e = km.offset[k]; e < km.offset[k + 1]; ++e)
        s += fh[km.l_index[e]] * gh[km.m_index[e]] * km.weight[e];
      qh[k] = s / std::numbers::pi;
    }
  };
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(c.threads), n2);
  if (nt <= 1) {
    work(0, n2);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nt; ++t)
      pool.emplace_back(work, n2 * t / nt, n2 * (t + 1) / nt);
  }
  return qh;
}

inline void check_spectral_field(const SpectralConfig& c, const Field& f)
{
  const auto n = static_cast<std::size_t>(c.n_modes);
  if (!c.kernel_modes || !c.plans)
    throw std::invalid_argument("SpectralConfig: use make_spectral_config");
  if (!(f.shape() == FieldShape{n, n, 1}))
    throw std::invalid_argument("collision: field must be N x N scalar");
}

// Q(f, g); Q(f) = Q(f, f)
inline Field collision_bilinear(const SpectralConfig& c, const Field& f, const Field& g)
{
  check_spectral_field(c, f);
  check_spectral_field(c, g);
  const auto fh = detail::to_modes(c, f);
  const auto gh = detail::to_modes(c, g);
  return detail::from_modes(c, collision_modes(c, fh, gh));
}

inline Field collision_spectral(const SpectralConfig& c, const Field& f)
{
  check_spectral_field(c, f);
  const auto fh = detail::to_modes(c, f);
  return detail::from_modes(c, collision_modes(c, fh, fh));
}

inline std::vector<std::complex<double>> spectral_modes(const SpectralConfig& c, const Field& f)
{
  check_spectral_field(c, f);
  return detail::to_modes(c, f);
}

inline SemiDiscreteOperator collision_operator(const SpectralConfig& c)
{
  SemiDiscreteOperator op;
  op.name = "boltzmann_spectral";
  op.order = 2 * c.n_modes;
  op.is_linear = false;
  const auto n = static_cast<std::size_t>(c.n_modes);
  op.shape = FieldShape{n, n, 1};
  op.eval = [c](const Field& f, double) { return collision_spectral(c, f); };
  return op;
}

inline SemiDiscreteOperator re_collision(const SpectralConfig& c, const Field& f_eq)
{
  const SemiDiscreteOperator Q = collision_operator(c);
  return residual_equilibrium_operator(Q, make_equilibrium(Q, f_eq));
}

struct BKWState
{
  double t = 0.0;
  double S = 0.5;
};

inline BKWState bkw_state(double t)
{
  if (!(t >= 0.0)) throw std::invalid_argument("bkw_state: t must be non-negative");
  return {t, 1.0 - std::exp(-t / 8.0) / 2.0};
}

inline double bkw_value(double S, double v2)
{
  return std::exp(-v2 / (2.0 * S)) / (2.0 * std::numbers::pi * S * S) *
         (2.0 * S - 1.0 + (1.0 - S) / (2.0 * S) * v2);
}

inline Field bkw_field(const Grid2D& g, double t)
{
  const double S = bkw_state(t).S;
  return project_function(g, [S](double x, double y) { return bkw_value(S, x * x + y * y); });
}

inline Field bkw_time_derivative(const Grid2D& g, double t)
{
  const double S = bkw_state(t).S;
  const double dS = std::exp(-t / 8.0) / 16.0;
  return project_function(g, [S, dS](double x, double y) {
    const double v2 = x * x + y * y;
    const double e = std::exp(-v2 / (2.0 * S)) / (2.0 * std::numbers::pi * S * S);
    const double P = 2.0 * S - 1.0 + (1.0 - S) / (2.0 * S) * v2;
    const double dP = 2.0 - v2 / (2.0 * S * S);
    const double de = e * (v2 / (2.0 * S * S) - 2.0 / S);
    return (de * P + e * dP) * dS;
  });
}

inline ReferenceTrajectory bkw_trajectory(const Grid2D& g)
{
  ReferenceTrajectory tr;
  tr.u_s = [g](double t) { return bkw_field(g, t); };
  tr.du_s_dt = [g](double t) { return bkw_time_derivative(g, t); };
  tr.t_min = 0.0;
  return tr;
}

inline Field maxwellian_2d(const Grid2D& g, double rho, double ux, double uy, double T)
{
  if (!(rho > 0.0) || !(T > 0.0))
    throw std::invalid_argument("maxwellian_2d: rho and T must be positive");
  const double c = rho / (2.0 * std::numbers::pi * T);
  return project_function(g, [=](double x, double y) {
    const double dx = x - ux, dy = y - uy;
    return c * std::exp(-(dx * dx + dy * dy) / (2.0 * T));
  });
}

}  // namespace resideq
