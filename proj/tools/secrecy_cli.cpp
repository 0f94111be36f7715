#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "secrecy/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-capacity region toolkit"};
  app.require_subcommand(0);

  std::string config_path;
  std::string output;
  std::string format;
  long long seed = -1;
  int restarts = -1;
  int mu_grid = -1;
  int alpha_grid = -1;

  app.add_option("--config", config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--output", output, "output path (default: config value or stdout)");
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "RNG seed override");
  app.add_option("--restarts", restarts, "solver restart count override");
  app.add_option("--mu-grid", mu_grid, "weight-grid size override");
  app.add_option("--alpha-grid", alpha_grid, "power-split grid size override");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();

  secrecy::RunConfig cfg;
  try {
    cfg = secrecy::parse_config(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!output.empty()) cfg.output = output;
  if (!format.empty()) cfg.format = format;
  if (seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.solver.seed = cfg.seed;
  }
  if (restarts > 0) cfg.solver.restarts = restarts;
  if (mu_grid > 0) cfg.mu_grid_size = mu_grid;
  if (alpha_grid > 1) cfg.alpha_grid_size = alpha_grid;

  return secrecy::run(cfg, std::cout, std::cerr);
}
