// s4gauss <command> --config <path> [--out <dir>] [--lambda <list>] [--n <grid>]

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "s4gauss/cli.hpp"
#include "s4gauss/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gauss map diagnostics for conformal immersions into S^4"};
  std::string command, config_path, out_dir, lambdas;
  int n = 0;
  app.add_option("command", command, "analyze | tension | family | energy | verify | catalog")
      ->required()
      ->check(CLI::IsMember({"analyze", "tension", "family", "energy", "verify", "catalog"}));
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
  app.add_option("--lambda", lambdas, "comma-separated lambda angles in units of pi (overrides [family] lambda)");
  app.add_option("--n", n, "grid size for both axes (overrides [grid])")->check(CLI::Range(8, 1 << 14));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  s4g::RunConfig cfg;
  try {
    if (!config_path.empty())
      cfg = s4g::load_config(config_path);
    else if (command != "catalog")
      throw s4g::Error(s4g::ErrorKind::ConfigError, "--config is required for " + command);
    // Overrides reuse the config grammar so they are validated the same way.
    std::ostringstream extra;
    if (n > 0) extra << "[grid] nx=" << n << " ny=" << n << '\n';
    if (!lambdas.empty()) extra << "[family] lambda=" << lambdas << '\n';
    if (!extra.str().empty()) {
      const s4g::RunConfig o = s4g::parse_config(extra.str());
      if (n > 0) cfg.nx = cfg.ny = o.nx;
      if (!lambdas.empty()) cfg.family.lambda_angles = o.family.lambda_angles;
    }
    if (!out_dir.empty()) cfg.output.dir = out_dir;
  } catch (const s4g::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return s4g::run_command(command, cfg, std::cout, std::cerr);
}
