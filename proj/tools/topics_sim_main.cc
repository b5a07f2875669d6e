// Copyright 2026 The Topics Simulator Authors
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

// Command-line driver for the Topics / FLoC simulator.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "topics_sim/commands.h"

namespace {

void AddCommonOptions(CLI::App* command, topics_sim::CommandOptions& options,
                      std::string& config, std::string& out, uint64_t& seed,
                      bool config_required) {
  auto* config_opt =
      command->add_option("--config", config, "Scenario config JSON");
  if (config_required) config_opt->required();
  command->add_option("--out", out, "Output directory")->required();
  command->add_option("--seed", seed, "Master seed (overrides the config)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topics API and FLoC cohort simulator"};
  app.require_subcommand(1);

  topics_sim::CommandOptions options;
  std::string config;
  std::string out;
  uint64_t seed = 0;

  CLI::App* gen_trace = app.add_subcommand("gen-trace", "Generate a browsing trace");
  AddCommonOptions(gen_trace, options, config, out, seed, true);
  CLI::App* run = app.add_subcommand("run", "Simulate the Topics API over a trace");
  AddCommonOptions(run, options, config, out, seed, true);
  CLI::App* floc = app.add_subcommand("floc", "Assign FLoC cohorts per epoch");
  AddCommonOptions(floc, options, config, out, seed, false);
  floc->add_option("--bits", options.bits, "SimHash width")
      ->check(CLI::Range(1, 64));
  floc->add_option("--k-min", options.k_min, "Minimum cohort size")
      ->check(CLI::PositiveNumber);
  CLI::App* attack =
      app.add_subcommand("attack", "Link users across two callers' logs");
  AddCommonOptions(attack, options, config, out, seed, false);
  attack->add_option("--caller-a", options.caller_a, "First caller id");
  attack->add_option("--caller-b", options.caller_b, "Second caller id");
  attack->add_option("--window", options.window, "Epochs compared")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? topics_sim::kExitOk : topics_sim::kExitUsage;
  }

  options.config_path = config;
  options.out_dir = out;
  for (CLI::App* command : {gen_trace, run, floc, attack}) {
    if (command->parsed() && command->count("--seed") > 0) options.seed = seed;
  }

  if (gen_trace->parsed()) {
    return topics_sim::RunGenTraceCommand(options, std::cout, std::cerr);
  }
  if (run->parsed()) return topics_sim::RunRunCommand(options, std::cout, std::cerr);
  if (floc->parsed()) return topics_sim::RunFlocCommand(options, std::cout, std::cerr);
  return topics_sim::RunAttackCommand(options, std::cout, std::cerr);
}
