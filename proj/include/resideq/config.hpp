#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "re_core.hpp"

namespace resideq {

class ConfigError : public std::invalid_argument
{
 public:
  using std::invalid_argument::invalid_argument;
};

struct Preset
{
  std::string model;
  std::string test;
  std::vector<std::string> schemes;  // first entry is the default
  std::size_t n_cells = 0;
  std::optional<double> dt;  // empty: stability-based
  double t_end = 0.0;
  double sample_every = 0.0;
  StepperKind stepper = StepperKind::forward_euler;
  double g = 0.0;
  std::string description;
};

inline const std::vector<Preset>& presets()
{
  static const std::vector<Preset> table = {
      {"fp", "two_gaussians", {"rec", "su", "sc", "reu", "cc"}, 100, 1.5e-4, 8.0, 0.1,
       StepperKind::forward_euler, 0.0,
       "linear Fokker-Planck on [-5,5], two Gaussian bumps relaxing to the Maxwellian"},
      {"pme", "gaussian_ring", {"reu", "su"}, 64, std::nullopt, 20.0, 0.5,
       StepperKind::forward_euler, 0.0,
       "porous medium m=5 on [-10,10]^2 from |x|^2 exp(-|x|^2/2) toward the Barenblatt profile"},
      {"boltzmann", "bkw", {"refs", "fs", "tdr"}, 32, 0.01, 10.0, 0.5,
       StepperKind::forward_euler, 0.0,
       "homogeneous Boltzmann, Maxwell molecules, BKW initial datum on [-8,8]^2"},
      {"swe", "lake", {"relf", "lf", "fl-relf"}, 200, std::nullopt, 1.0, 0.01,
       StepperKind::ssp_rk2, 1.0, "shallow water, perturbed lake at rest on [0,1] with walls"},
      {"swe", "transcritical", {"fl-relf", "lf", "relf"}, 200, std::nullopt, 500.0, 1.0,
       StepperKind::ssp_rk2, 9.81,
       "shallow water, transcritical flow with shock over a bump on [0,25]"},
      {"advect", "equilibrium", {"eq-limited", "tvd2", "re"}, 100, std::nullopt, 5.0, 0.1,
       StepperKind::forward_euler, 0.0,
       "advection with absorption on [0,5], relaxation to u_B exp(-x/a)"},
      {"advect", "tvd_sweep", {"eq-limited"}, 100, std::nullopt, 0.0, 0.0,
       StepperKind::forward_euler, 0.0,
       "total-variation check of the equilibrium-limited scheme over random data"},
  };
  return table;
}

inline const Preset& find_preset(const std::string& model, const std::string& test)
{
  const std::string t = test == "tvd-sweep" ? "tvd_sweep" : test;
  for (const auto& p : presets())
    if (p.model == model && p.test == t) return p;
  throw ConfigError("unknown preset '" + model + "/" + test + "'");
}

struct RunConfig
{
  std::string model;
  std::string test;
  std::string scheme;
  std::size_t n_cells = 0;
  std::optional<double> dt;  // empty means auto
  double t_end = 0.0;
  double sample_every = 0.0;
  std::vector<double> snapshot_times;
  StepperKind stepper = StepperKind::forward_euler;
  double alpha = 2.0;
  double indicator_epsilon = 1e-14;
  double g = 0.0;
  std::string output_dir = ".";
  unsigned long long seed = 1;
  bool start_at_equilibrium = false;
  double perturbation = 0.1;
  double cfl = 0.4;
  int n_steps = 200;
  int n_random = 20;
  int m_angles = 8;
};

namespace detail {

inline std::string trim(const std::string& s)
{
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_real(const std::string& key, const std::string& v)
{
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError("malformed real for '" + key + "': '" + v + "'");
  return out;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v)
{
  Int out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("malformed integer for '" + key + "': '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v)
{
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("malformed boolean for '" + key + "': '" + v + "'");
}

}  // namespace detail

// key=value lines; '#' starts a comment; later lines override earlier ones
inline std::map<std::string, std::string> parse_key_values(const std::string& text)
{
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    kv[key] = detail::trim(line.substr(eq + 1));
  }
  return kv;
}

inline RunConfig parse_config(const std::string& text)
{
  auto kv = parse_key_values(text);
  static const std::vector<std::string> known = {
      "model", "test", "scheme", "n_cells", "dt", "t_end", "sample_every", "snapshot_times",
      "stepper", "alpha", "indicator_epsilon", "g", "output_dir", "seed",
      "start_at_equilibrium", "perturbation", "cfl", "n_steps", "n_random", "m_angles"};
  for (const auto& [k, v] : kv)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ConfigError("unknown key '" + k + "'");
  if (!kv.count("model")) throw ConfigError("missing required key 'model'");
  if (!kv.count("test")) throw ConfigError("missing required key 'test'");

  const Preset& pre = find_preset(kv["model"], kv["test"]);
  RunConfig c;
  c.model = pre.model;
  c.test = pre.test;
  c.scheme = pre.schemes.front();
  c.n_cells = pre.n_cells;
  c.dt = pre.dt;
  c.t_end = pre.t_end;
  c.sample_every = pre.sample_every;
  c.stepper = pre.stepper;
  c.g = pre.g;

  using detail::parse_int;
  using detail::parse_real;
  for (const auto& [k, v] : kv) {
    if (k == "model" || k == "test") continue;
    if (k == "scheme") {
      if (std::find(pre.schemes.begin(), pre.schemes.end(), v) == pre.schemes.end())
        throw ConfigError("scheme '" + v + "' not available for " + c.model + "/" + c.test);
      c.scheme = v;
    } else if (k == "n_cells") {
      c.n_cells = parse_int<std::size_t>(k, v);
    } else if (k == "dt") {
      if (v == "auto") c.dt.reset();
      else c.dt = parse_real(k, v);
    } else if (k == "t_end") {
      c.t_end = parse_real(k, v);
    } else if (k == "sample_every") {
      c.sample_every = parse_real(k, v);
    } else if (k == "snapshot_times") {
      c.snapshot_times.clear();
      std::istringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = detail::trim(item);
        if (!item.empty()) c.snapshot_times.push_back(parse_real(k, item));
      }
    } else if (k == "stepper") {
      try {
        c.stepper = parse_stepper(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (k == "alpha") {
      c.alpha = parse_real(k, v);
    } else if (k == "indicator_epsilon") {
      c.indicator_epsilon = parse_real(k, v);
    } else if (k == "g") {
      c.g = parse_real(k, v);
    } else if (k == "output_dir") {
      c.output_dir = v;
    } else if (k == "seed") {
      c.seed = parse_int<unsigned long long>(k, v);
    } else if (k == "start_at_equilibrium") {
      c.start_at_equilibrium = detail::parse_bool(k, v);
    } else if (k == "perturbation") {
      c.perturbation = parse_real(k, v);
    } else if (k == "cfl") {
      c.cfl = parse_real(k, v);
    } else if (k == "n_steps") {
      c.n_steps = parse_int<int>(k, v);
    } else if (k == "n_random") {
      c.n_random = parse_int<int>(k, v);
    } else if (k == "m_angles") {
      c.m_angles = parse_int<int>(k, v);
    }
  }

  if (c.n_cells < 2) throw ConfigError("n_cells must be at least 2");
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (c.model != "advect" || c.test != "tvd_sweep")
    if (!(c.sample_every > 0.0)) throw ConfigError("sample_every must be positive");
  if (!(c.alpha > 1.0)) throw ConfigError("alpha must exceed 1");
  if (!(c.indicator_epsilon > 0.0)) throw ConfigError("indicator_epsilon must be positive");
  if (c.model == "swe" && !(c.g > 0.0)) throw ConfigError("g must be positive");
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) throw ConfigError("cfl must lie in (0,1)");
  if (c.n_steps < 0 || c.n_random < 0) throw ConfigError("n_steps and n_random must be >= 0");
  if (c.m_angles < 1) throw ConfigError("m_angles must be positive");
  if (c.model == "boltzmann" && c.n_cells % 2 != 0)
    throw ConfigError("boltzmann needs an even n_cells");
  return c;
}

}  // namespace resideq
