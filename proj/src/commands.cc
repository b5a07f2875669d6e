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

#include "topics_sim/commands.h"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "topics_sim/analysis.h"
#include "topics_sim/classifier.h"
#include "topics_sim/file_util.h"
#include "topics_sim/logs.h"
#include "topics_sim/pipeline.h"
#include "topics_sim/prf.h"
#include "topics_sim/strings.h"
#include "topics_sim/taxonomy.h"
#include "topics_sim/tracegen.h"

namespace topics_sim {
namespace {

namespace fs = std::filesystem;

std::string Hex(uint64_t value) { return fmt::format("{:016x}", value); }

// Flag, then config preset, then default.
template <typename T>
T Setting(const std::optional<T>& flag, const std::optional<int64_t>& preset,
          T fallback) {
  if (flag) return *flag;
  if (preset) return static_cast<T>(*preset);
  return fallback;
}

struct Inputs {
  ScenarioConfig config;
  Taxonomy taxonomy;
  KeywordMap keywords;
};

absl::StatusOr<Inputs> LoadInputs(const CommandOptions& options) {
  if (options.config_path.empty()) {
    return absl::InvalidArgumentError("--config is required");
  }
  absl::StatusOr<ScenarioConfig> config =
      LoadScenarioConfigFile(options.config_path);
  if (!config.ok()) return config.status();
  if (options.seed) config->master_seed = *options.seed;
  absl::StatusOr<Taxonomy> taxonomy =
      LoadTaxonomyFile(config->ResolvedTaxonomyPath());
  if (!taxonomy.ok()) return taxonomy.status();
  absl::StatusOr<KeywordMap> keywords =
      LoadKeywordMapFile(config->ResolvedKeywordMapPath(), *taxonomy);
  if (!keywords.ok()) return keywords.status();
  return Inputs{std::move(*config), std::move(*taxonomy), std::move(*keywords)};
}

// Collects outputs for the manifest as they are written.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {}

  absl::Status Create() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      return absl::UnavailableError(
          StrCat("cannot create output directory ", dir_.string()));
    }
    return absl::OkStatus();
  }

  absl::Status Write(const std::string& name, const std::string& contents) {
    if (absl::Status status = WriteFileAtomic(dir_ / name, contents);
        !status.ok()) {
      return status;
    }
    outputs_.push_back({{"path", name},
                        {"fnv1a64", Hex(Fnv1a64(contents))},
                        {"bytes", contents.size()}});
    return absl::OkStatus();
  }

  absl::Status WriteManifest(std::string_view command,
                             const std::string& config_hash, uint64_t seed) {
    nlohmann::ordered_json manifest = {{"tool", kToolName},
                                       {"version", kToolVersion},
                                       {"command", command},
                                       {"config_hash", config_hash},
                                       {"master_seed", seed},
                                       {"outputs", outputs_}};
    return WriteFileAtomic(dir_ / StrCat("manifest_", command, ".json"),
                           manifest.dump(2) + "\n");
  }

  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<nlohmann::ordered_json> outputs_;
};

struct RunMetadata {
  std::string config_hash;
  uint64_t master_seed = 0;
};

// Reads config hash and seed from a manifest left by an earlier command.
std::optional<RunMetadata> ReadMetadata(const fs::path& dir,
                                        std::initializer_list<std::string_view>
                                            commands) {
  for (std::string_view command : commands) {
    absl::StatusOr<std::string> text =
        ReadFile(dir / StrCat("manifest_", command, ".json"));
    if (!text.ok()) continue;
    nlohmann::json doc =
        nlohmann::json::parse(*text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.contains("config_hash") ||
        !doc.contains("master_seed") || !doc["master_seed"].is_number_unsigned()) {
      continue;
    }
    return RunMetadata{doc["config_hash"].get<std::string>(),
                       doc["master_seed"].get<uint64_t>()};
  }
  return std::nullopt;
}

int Fail(std::ostream& err, int code, const absl::Status& status) {
  err << kToolName << ": " << status.message() << "\n";
  return code;
}

std::string ConfigHash(const ScenarioConfig& config) {
  return Hex(Fnv1a64(CanonicalConfigJson(config)));
}

absl::Status WriteTraceFiles(OutputDir& out, const Population& population,
                             std::span<const VisitEvent> events) {
  if (absl::Status s = out.Write("trace.csv", FormatTraceCsv(events)); !s.ok()) {
    return s;
  }
  if (absl::Status s = out.Write("sites.csv", FormatSitesCsv(population));
      !s.ok()) {
    return s;
  }
  return out.Write("users.csv", FormatUsersCsv(population.users));
}

}  // namespace

int RunGenTraceCommand(const CommandOptions& options, std::ostream& out,
                       std::ostream& err) {
  absl::StatusOr<Inputs> inputs = LoadInputs(options);
  if (!inputs.ok()) return Fail(err, kExitUsage, inputs.status());
  absl::StatusOr<Population> population =
      GeneratePopulation(inputs->config, inputs->taxonomy, inputs->keywords);
  if (!population.ok()) return Fail(err, kExitUsage, population.status());
  const std::vector<VisitEvent> events = GenerateVisits(*population, inputs->config);

  OutputDir dir(options.out_dir);
  if (absl::Status s = dir.Create(); !s.ok()) return Fail(err, kExitIo, s);
  if (absl::Status s = WriteTraceFiles(dir, *population, events); !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  if (absl::Status s = dir.WriteManifest("gen-trace", ConfigHash(inputs->config),
                                         inputs->config.master_seed);
      !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  out << "users " << population->users.size() << ", sites "
      << population->sites.size() << ", events " << events.size() << "\n";
  return kExitOk;
}

int RunRunCommand(const CommandOptions& options, std::ostream& out,
                  std::ostream& err) {
  absl::StatusOr<Inputs> inputs = LoadInputs(options);
  if (!inputs.ok()) return Fail(err, kExitUsage, inputs.status());
  absl::StatusOr<SimulationResult> result =
      RunScenario(inputs->config, inputs->taxonomy, inputs->keywords);
  if (!result.ok()) return Fail(err, kExitUsage, result.status());

  OutputDir dir(options.out_dir);
  if (absl::Status s = dir.Create(); !s.ok()) return Fail(err, kExitIo, s);
  if (absl::Status s = WriteTraceFiles(dir, result->population, result->events);
      !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  const std::vector<CallerViewRow> view = ToCallerView(result->ground_truth);
  for (const auto& [name, contents] :
       {std::pair<std::string, std::string>{
            "ground_truth.csv", FormatGroundTruthCsv(result->ground_truth)},
        {"caller_view.csv", FormatCallerViewCsv(view)},
        {"user_state.json", FormatUserStateJson(result->final_states)}}) {
    if (absl::Status s = dir.Write(name, contents); !s.ok()) {
      return Fail(err, kExitIo, s);
    }
  }
  if (absl::Status s = dir.WriteManifest("run", ConfigHash(inputs->config),
                                         inputs->config.master_seed);
      !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  out << "events " << result->events.size() << ", log rows "
      << result->ground_truth.size() << "\n";
  if (absl::StatusOr<double> rate = MeasureNoiseRate(result->ground_truth);
      rate.ok()) {
    out << "measured noise rate " << fmt::format("{:.6f}", *rate) << "\n";
  }
  return kExitOk;
}

int RunFlocCommand(const CommandOptions& options, std::ostream& out,
                   std::ostream& err) {
  OutputDir dir(options.out_dir);
  Population population;
  std::vector<VisitEvent> events;
  RunMetadata metadata;
  CommandSettings presets;

  if (!options.config_path.empty()) {
    absl::StatusOr<Inputs> inputs = LoadInputs(options);
    if (!inputs.ok()) return Fail(err, kExitUsage, inputs.status());
    presets = inputs->config.commands;
    absl::StatusOr<Population> generated =
        GeneratePopulation(inputs->config, inputs->taxonomy, inputs->keywords);
    if (!generated.ok()) return Fail(err, kExitUsage, generated.status());
    population = std::move(*generated);
    events = GenerateVisits(population, inputs->config);
    metadata = {ConfigHash(inputs->config), inputs->config.master_seed};
    if (absl::Status s = dir.Create(); !s.ok()) return Fail(err, kExitIo, s);
    if (absl::Status s = WriteTraceFiles(dir, population, events); !s.ok()) {
      return Fail(err, kExitIo, s);
    }
  } else {
    std::optional<RunMetadata> previous =
        ReadMetadata(options.out_dir, {"gen-trace", "run"});
    absl::StatusOr<std::string> trace = ReadFile(options.out_dir / "trace.csv");
    absl::StatusOr<std::string> sites = ReadFile(options.out_dir / "sites.csv");
    absl::StatusOr<std::string> users = ReadFile(options.out_dir / "users.csv");
    for (const auto* file : {&trace, &sites, &users}) {
      if (!file->ok()) {
        return Fail(err, kExitIo,
                    absl::UnavailableError(StrCat(
                        file->status().message(),
                        " (run gen-trace first or pass --config)")));
      }
    }
    absl::StatusOr<std::vector<VisitEvent>> parsed_events = ParseTraceCsv(*trace);
    if (!parsed_events.ok()) return Fail(err, kExitUsage, parsed_events.status());
    absl::StatusOr<Population> parsed_sites = ParseSitesCsv(*sites);
    if (!parsed_sites.ok()) return Fail(err, kExitUsage, parsed_sites.status());
    absl::StatusOr<std::vector<UserProfile>> parsed_users = ParseUsersCsv(*users);
    if (!parsed_users.ok()) return Fail(err, kExitUsage, parsed_users.status());
    events = std::move(*parsed_events);
    population = std::move(*parsed_sites);
    population.users = std::move(*parsed_users);
    if (previous) metadata = *previous;
    if (options.seed) metadata.master_seed = *options.seed;
  }

  absl::StatusOr<std::vector<CohortAssignment>> cohorts =
      CohortsPerEpoch(population.sites, events,
                      Setting(options.bits, presets.bits, kDefaultBits),
                      Setting(options.k_min, presets.k_min, kDefaultKMin));
  if (!cohorts.ok()) return Fail(err, kExitUsage, cohorts.status());
  if (cohorts->empty()) {
    return Fail(err, kExitUsage, absl::InvalidArgumentError("empty trace"));
  }

  std::vector<std::map<UserId, uint64_t>> labels;
  for (size_t epoch = 0; epoch < cohorts->size(); ++epoch) {
    labels.push_back((*cohorts)[epoch].labels);
    if (absl::Status s = dir.Write(StrCat("cohorts_epoch_", epoch, ".csv"),
                                   FormatCohortCsv((*cohorts)[epoch]));
        !s.ok()) {
      return Fail(err, kExitIo, s);
    }
  }
  absl::StatusOr<UniquenessReport> uniqueness = CohortSequenceUniqueness(labels);
  if (!uniqueness.ok()) return Fail(err, kExitUsage, uniqueness.status());
  if (absl::Status s = dir.Write("uniqueness.json", ToJson(*uniqueness)); !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  out << ToTable(*uniqueness);

  std::map<UserId, int> attributes;
  for (const UserProfile& user : population.users) {
    attributes[user.user_id] = user.attribute;
  }
  if (labels.back().size() >= 2) {
    absl::StatusOr<CorrelationReport> correlation = CohortAttributeCorrelation(
        labels.back(), attributes, metadata.master_seed);
    if (!correlation.ok()) return Fail(err, kExitUsage, correlation.status());
    if (absl::Status s = dir.Write("correlation.json", ToJson(*correlation));
        !s.ok()) {
      return Fail(err, kExitIo, s);
    }
    out << ToTable(*correlation);
  }
  if (absl::Status s =
          dir.WriteManifest("floc", metadata.config_hash, metadata.master_seed);
      !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  return kExitOk;
}

int RunAttackCommand(const CommandOptions& options, std::ostream& out,
                     std::ostream& err) {
  RunMetadata metadata;
  CommandSettings presets;
  if (!options.config_path.empty()) {
    absl::StatusOr<ScenarioConfig> config =
        LoadScenarioConfigFile(options.config_path);
    if (!config.ok()) return Fail(err, kExitUsage, config.status());
    if (options.seed) config->master_seed = *options.seed;
    metadata = {ConfigHash(*config), config->master_seed};
    presets = config->commands;
  } else if (std::optional<RunMetadata> previous =
                 ReadMetadata(options.out_dir, {"run"})) {
    metadata = *previous;
  }
  if (options.seed) metadata.master_seed = *options.seed;

  absl::StatusOr<std::string> text = ReadFile(options.out_dir / "caller_view.csv");
  if (!text.ok()) return Fail(err, kExitIo, text.status());
  absl::StatusOr<std::vector<CallerViewRow>> log = ParseCallerViewCsv(*text);
  if (!log.ok()) return Fail(err, kExitUsage, log.status());

  std::set<CallerId> callers;
  for (const CallerViewRow& row : *log) callers.insert(row.caller_id);
  const CallerId caller_a =
      Setting(options.caller_a, presets.caller_a, kDefaultCallerA);
  const CallerId caller_b =
      Setting(options.caller_b, presets.caller_b, kDefaultCallerB);
  const int window = Setting(options.window, presets.window, kDefaultWindow);
  for (CallerId caller : {caller_a, caller_b}) {
    if (!callers.contains(caller)) {
      return Fail(err, kExitUsage,
                  absl::NotFoundError(StrCat("unknown caller id ", caller)));
    }
  }
  const ObservationTable a = ReconstructObservations(*log, caller_a);
  const ObservationTable b = ReconstructObservations(*log, caller_b);
  absl::StatusOr<LinkageReport> report =
      CrossCallerLinkage(a, b, window, metadata.master_seed);
  if (!report.ok()) return Fail(err, kExitUsage, report.status());

  OutputDir dir(options.out_dir);
  if (absl::Status s = dir.Write("linkage.json", ToJson(*report)); !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  if (absl::Status s =
          dir.WriteManifest("attack", metadata.config_hash, metadata.master_seed);
      !s.ok()) {
    return Fail(err, kExitIo, s);
  }
  out << ToTable(*report);
  return kExitOk;
}

}  // namespace topics_sim
