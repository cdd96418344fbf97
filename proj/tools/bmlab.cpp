#include <CLI11.hpp>
#include <iostream>

#include "bmlab/errors.hpp"
#include "bmlab/fft.hpp"
#include "bmlab/harness.hpp"
#include "bmlab/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-mode condensate metrology toolkit"};
  app.set_version_flag("--version", bmlab::kVersion);

  std::string command;
  bmlab::harness::RunSpec spec;
  std::string config, out, data;
  app.add_option("command", command, "ground-state | evolve | sweep | fit | validate")
      ->required()
      ->check(CLI::IsMember({"ground-state", "evolve", "sweep", "fit", "validate"}));
  app.add_option("--config", config, "keyed configuration file");
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--N", spec.N_list, "atom numbers (overrides N)")->delimiter(',');
  app.add_option("--seed", spec.seed, "noise seed, recorded in every output");
  app.add_option("--override", spec.overrides, "key=value on top of the config file");
  app.add_option("--data", data, "trajectory CSV for fit");
  app.add_option("--model", spec.model, "fit model T1, T2 or T3")
      ->check(CLI::IsMember({"T1", "T2", "T3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bmlab::harness::kExitConfig;
  }

  spec.command = bmlab::harness::parse_command(command);
  spec.config = config;
  spec.out = out;
  spec.data = data;
  bmlab::configure_threads();
  return bmlab::harness::run(spec, std::cerr);
}
