#include <iostream>

#include "CLI11.hpp"
#include "akpz/cli.hpp"

int main(int argc, char** argv) {
  using namespace akpz::cli;
  CLI::App app{"Anisotropic growth on lozenge tilings: simulation, sampling and PDE tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunOptions opt;
  std::uint64_t seed = 0;
  const std::pair<const char*, const char*> subs[] = {
      {"simulate", "Run the growth dynamics from a configuration"},
      {"gibbs", "Sample tilings of a torus and measure statistics"},
      {"pde", "Solve the macroscopic equation (characteristics, hopf, riemann, envelope)"},
      {"hydro", "Run or aggregate a hydrodynamic-limit experiment"},
      {"snapshot", "Render a tiling as SVG"},
  };
  for (auto [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "INI configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override the configured seed");
    sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed")) opt.seed = seed;
  return run_subcommand(chosen->get_name(), opt, std::cout, std::cerr);
}
