#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pbm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gassner representations of pure braid groups and cyclic cover homology"};
  std::string command;
  std::string config_path;
  app.add_option("command", command, "one of: matrix verify form specialize spectral decompose dm classify signature sweep")
      ->required();
  std::map<std::string, std::string> raw;
  auto flag = [&](const std::string& name, const std::string& help) {
    app.add_option("--" + name, raw[name], help);
  };
  flag("n", "branch points minus one; N, or a..b for sweep");
  flag("d", "cover order; N, or a..b for sweep");
  flag("k", "comma-separated weights, e.g. 1,1,1,1");
  flag("f", "embedding index coprime to d");
  flag("word", "braid word, e.g. \"s1 s2^-1\", \"A 1 3\", \"D 1 4\" or [1,-2]");
  flag("basis", "reduced or unreduced");
  flag("seed", "seed for randomized checks (default 0)");
  flag("out", "write the report to this file instead of stdout");
  flag("cap", "largest d and n a sweep may visit (default 12)");
  app.add_option("--config", config_path, "key=value file; flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }

  pbm::Settings settings;
  try {
    if (!config_path.empty()) settings = pbm::read_config_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& [name, value] : raw) {
    if (app.count("--" + name) > 0) settings[name] = value;
  }

  pbm::RunResult res = pbm::run(command, settings);
  if (res.exit_code != 0) {
    std::cerr << res.error << "\n";
    return res.exit_code;
  }
  auto out = settings.find("out");
  if (out != settings.end()) {
    std::ofstream file(out->second, std::ios::binary);
    if (!file) {
      std::cerr << "validation error: cannot write '" << out->second << "'\n";
      return 2;
    }
    file << res.output;
  } else {
    std::cout << res.output;
  }
  return 0;
}
