// SPDX-License-Identifier: Apache-2.0
//
// hcsplit split|dimsweep|corollary|checks [--config PATH] [--set KEY=VALUE]... [--out DIR]
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcsplit/errors.hpp"
#include "hcsplit/experiment.hpp"

int main(int argc, char** argv) {
  using namespace hcsplit;
  CLI::App app{"Split T(t) of a hypercontractive semigroup into a small L_p part and an L_p -> L_2 part"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> settings;
  std::string out_dir;
  const std::map<std::string, std::pair<std::string, std::function<RunResult(const ExperimentConfig&)>>> commands = {
      {"split", {"run the split for every epsilon and certify both bounds", run_split_experiment}},
      {"dimsweep", {"repeat the split over n_range and report stability factors", run_dimension_sweep}},
      {"corollary", {"build the projection onto a subspace for every n in n_range", run_corollary_demo}},
      {"checks", {"run the invariant suite", run_checks}},
  };
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--set", settings, "override one key, KEY=VALUE (repeatable)")->take_all();
    sub->add_option("--out", out_dir, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  ExperimentConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    for (const auto& s : settings) apply_setting(config, s);
    if (!out_dir.empty()) config.output_dir = out_dir;
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& [name, entry] : commands) {
    if (!app.got_subcommand(name)) continue;
    const RunResult result = entry.second(config);
    for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
    if (result.exit_code == kExitUsage) {
      std::cerr << "usage error: " << result.message << '\n';
    } else if (result.exit_code == kExitNumerical) {
      std::cerr << "numerical failure: " << result.message << '\n';
    } else {
      std::cout << name << ": " << result.message << '\n';
    }
    return result.exit_code;
  }
  return kExitUsage;
}
