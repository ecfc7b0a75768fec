#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "resideq/resideq.hpp"

namespace {

int thread_count()
{
  const char* env = std::getenv("RESIDEQ_THREADS");
  if (!env || !*env) return 1;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 1;
  } catch (const std::exception&) {
    std::cerr << "ignoring malformed RESIDEQ_THREADS='" << env << "'\n";
    return 1;
  }
}

void print_presets()
{
  for (const auto& p : resideq::presets()) {
    std::cout << p.model << '/' << p.test << "  schemes:";
    for (const auto& s : p.schemes) std::cout << ' ' << s;
    std::cout << "\n    " << p.description << '\n';
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Residual equilibrium solvers for kinetic, diffusion and balance-law models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("config", config_path, "key=value configuration file")->required();
  run->add_option("--output-dir,-o", output_dir, "directory for diagnostics.csv and snapshots");
  run->add_option("--override", overrides, "key=value replacing a config entry")->take_all();

  app.add_subcommand("presets", "list the available presets");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("presets")) {
    print_presets();
    return 0;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read config '" << config_path << "'\n";
    return 1;
  }
  std::stringstream text;
  text << in.rdbuf();
  for (const auto& o : overrides) {
    if (o.find('=') == std::string::npos) {
      std::cerr << "override must be key=value: '" << o << "'\n";
      return 1;
    }
    text << '\n' << o;
  }
  if (!output_dir.empty()) text << "\noutput_dir=" << output_dir;

  try {
    const resideq::RunConfig cfg = resideq::parse_config(text.str());
    const auto outcome = resideq::run(cfg, thread_count(), std::cout);
    return outcome.status;
  } catch (const resideq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
