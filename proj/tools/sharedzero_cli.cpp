#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sharedzero/run.hpp"

int main(int argc, char** argv) {
  using namespace sharedzero;
  CLI::App app{"Numerical checks for log-quotients of planar harmonic functions sharing zeros"};
  std::string command;
  std::string config_path;
  std::vector<std::string> settings;
  app.add_option("command", command,
                 "verify-pde | verify-deltaF | verify-qform | verify-bochner | certify-bound | "
                 "sector-poisson | counterexample | suite")
      ->required();
  app.add_option("settings", settings, "key=value overrides applied after the config file");
  app.add_option("-c,--config", config_path, "flat key = value config file");
  std::string output, format;
  app.add_option("-o,--output", output, "report path (default: stdout)");
  app.add_option("-f,--format", format, "json or csv");
  std::string seed;
  app.add_option("--seed", seed, "seed for random sampling");
  bool timing = false;
  app.add_flag("--timing", timing, "include wall times in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg.command = parse_command(command);
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (!output.empty()) apply_setting(cfg, "output", output);
    if (!format.empty()) apply_setting(cfg, "format", format);
    if (!seed.empty()) apply_setting(cfg, "seed", seed);
    if (timing) cfg.timing = true;
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + s + "'");
      apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    cfg.command = parse_command(command);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(cfg, std::cout, std::cerr);
}
