// Copyright 2026 The sobolev_cantor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

using namespace sobolev_cantor::cli;

int main(int argc, char** argv) {
  CLI::App app{"Stage maps, Sobolev tables and degree probes for the Cantor-set counterexamples."};
  std::string command;
  std::string config_path;
  std::string out_dir;
  int stage = 0;
  long long seed = -1;
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--stage", stage, "Run a single stage K")->check(CLI::Range(1, 8));
  app.add_option("--seed", seed, "Seed (overrides seed)")->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  try {
    config = load_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (stage > 0) config.stage = stage;
    if (seed >= 0) {
      config.seed = static_cast<std::uint64_t>(seed);
      config.quadrature.seed = config.seed;
    }
    validate(config);
  } catch (const ConfigError& e) {
    std::cerr << config_path;
    if (e.line() > 0) std::cerr << ':' << e.line();
    std::cerr << ": " << e.what() << '\n';
    return kConfigError;
  }

  try {
    return run_command(command, config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kRuntimeError;
  }
}
