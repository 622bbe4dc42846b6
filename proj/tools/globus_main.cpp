#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "globus/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"globus: building-stock turnover engine"};
  app.set_version_flag("--version", std::string(GLOBUS_VERSION));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::vector<double> deltas;

  auto* validate = app.add_subcommand("validate", "Load and check a configuration");
  validate->add_option("config", config, "Path to config.json")->required();

  auto* run = app.add_subcommand("run", "Simulate every scenario and write stocks and metrics");
  run->add_option("config", config, "Path to config.json")->required();
  run->add_option("--out", out_dir, "Output directory (default: options.output_dir)");

  auto* sweep = app.add_subcommand("sweep", "Renovation-rate sensitivity of new construction");
  sweep->add_option("config", config, "Path to config.json")->required();
  sweep->add_option("--out", out_dir, "Output directory (default: options.output_dir)");
  sweep->add_option("--deltas", deltas, "Rate increments, e.g. 0.01,0.02")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : globus::cli::kUsage;
  }

  std::optional<std::filesystem::path> out;
  if (!out_dir.empty()) out = out_dir;

  try {
    if (*validate) return globus::cli::cmd_validate(config, std::cout, std::cerr);
    if (*run) return globus::cli::cmd_run(config, out, std::cout, std::cerr);
    if (*sweep) return globus::cli::cmd_sweep(config, out, deltas, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << '\n';
    return globus::cli::kEngineFailed;
  }
  return globus::cli::kUsage;
}
