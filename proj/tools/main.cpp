#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>

using namespace henon::cli;

int main(int argc, char** argv) {
  CLI::App app{"Green functions, currents and periodic points of complex Henon maps"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::optional<std::string>> flags;
  for (const auto& k : config_keys()) flags[std::string(k.key)];

  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value file; flags win over it");
    for (const auto& k : config_keys()) {
      std::string help(k.help);
      help += " [" + std::string(k.default_value) + "]";
      sub->add_option("--" + std::string(k.key), flags[std::string(k.key)], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    if (!config_path.empty()) apply_config_file(config, config_path);
    for (const auto& [key, value] : flags)
      if (value) config.set(key, *value);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(command, config, std::cout, std::cerr);
}
