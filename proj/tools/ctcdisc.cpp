// Copyright 2026 The ctcdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctcdisc run <config.yaml> [--override key=value]... [--out DIR]

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctcdisc/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multi-copy adaptive state discrimination experiments"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a YAML config");
  run->add_option("config", config, "YAML config file")->required();
  run->add_option("-o,--override", overrides, "dotted.key=value, applied after the file");
  run->add_option("--out", out_dir, "Directory for CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = ctcdisc::load_config(config, overrides);
    const auto outcome = ctcdisc::run_experiment(cfg, out_dir);
    std::cout << outcome.summary << '\n';
    for (const auto& f : outcome.files) std::cerr << "wrote " << f.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ctcdisc::exit_code_for(e);
  }
}
