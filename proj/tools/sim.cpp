// sim: command-line driver for the chemotaxis-consumption simulator.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deadcore/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Degenerate chemotaxis-consumption simulator with positivity certificates"};
  app.require_subcommand(1);

  std::string config;
  int levels = 3;

  auto* run = app.add_subcommand("run", "Run a scenario; write probes CSV, snapshots and certificate JSON");
  run->add_option("config", config, "Run configuration file")->required();

  auto* certify = app.add_subcommand("certify", "Run a scenario and print only the certificate JSON");
  certify->add_option("config", config, "Run configuration file")->required();

  auto* convergence = app.add_subcommand("convergence", "Refinement study against a closed-form reference");
  convergence->add_option("config", config, "Run configuration file")->required();
  convergence->add_option("--levels", levels, "Number of dyadic refinement levels (>= 2)");

  auto* validate = app.add_subcommand("validate-model", "Check the structural hypotheses on D");
  validate->add_option("config", config, "Run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : deadcore::cli::kUsage;
  }

  using namespace deadcore::cli;
  if (*run) return cmd_run(config, std::cout, std::cerr);
  if (*certify) return cmd_certify(config, std::cout, std::cerr);
  if (*convergence) return cmd_convergence(config, levels, std::cout, std::cerr);
  if (*validate) return cmd_validate_model(config, std::cout, std::cerr);
  return kUsage;
}
