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

#ifndef TOPICS_SIM_COMMANDS_H_
#define TOPICS_SIM_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>

#include "topics_sim/types.h"

namespace topics_sim {

inline constexpr std::string_view kToolName = "topics_sim";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
};

struct CommandOptions {
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  // Overrides master_seed from the config.
  std::optional<uint64_t> seed;

  // Unset values fall back to the config's command settings, then to the
  // defaults below.

  // floc
  std::optional<int> bits;
  std::optional<int> k_min;

  // attack
  std::optional<CallerId> caller_a;
  std::optional<CallerId> caller_b;
  std::optional<int> window;
};

inline constexpr int kDefaultBits = 8;
inline constexpr int kDefaultKMin = 1;
inline constexpr CallerId kDefaultCallerA = 1;
inline constexpr CallerId kDefaultCallerB = 2;
inline constexpr int kDefaultWindow = 3;

// Subcommands. Each returns an ExitCode, writes diagnostics to `err` and
// human-readable summaries to `out`. Output files are written atomically and
// described by manifest_<command>.json in the output directory.
//
//   gen-trace  trace.csv, sites.csv, users.csv
//   run        the above plus ground_truth.csv, caller_view.csv,
//              user_state.json
//   floc       cohorts_epoch_<e>.csv, uniqueness.json, correlation.json;
//              reuses trace files found in the output directory
//   attack     linkage.json, from caller_view.csv and manifest_run.json
int RunGenTraceCommand(const CommandOptions& options, std::ostream& out,
                       std::ostream& err);
int RunRunCommand(const CommandOptions& options, std::ostream& out,
                  std::ostream& err);
int RunFlocCommand(const CommandOptions& options, std::ostream& out,
                   std::ostream& err);
int RunAttackCommand(const CommandOptions& options, std::ostream& out,
                     std::ostream& err);

}  // namespace topics_sim

#endif  // TOPICS_SIM_COMMANDS_H_
