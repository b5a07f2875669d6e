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

#ifndef TOPICS_SIM_TRACEGEN_H_
#define TOPICS_SIM_TRACEGEN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "topics_sim/classifier.h"
#include "topics_sim/engine.h"
#include "topics_sim/taxonomy.h"
#include "topics_sim/types.h"

namespace topics_sim {

inline constexpr double kDefaultAttributeCorrelation = 0.8;
// Probability mass every site receives regardless of user interest.
inline constexpr double kSiteFloorWeight = 0.01;
// Fraction of generated sites that declare their topics in page metadata.
inline constexpr double kDeclaredSiteFraction = 0.25;
// Topic of global popularity rank r has weight (1/r)^kTopicPopularityExponent
// when users' interest rankings are drawn.
inline constexpr double kTopicPopularityExponent = 1.5;

// Command parameters a config may preset. Command-line flags win.
struct CommandSettings {
  std::optional<int64_t> bits;
  std::optional<int64_t> k_min;
  std::optional<int64_t> caller_a;
  std::optional<int64_t> caller_b;
  std::optional<int64_t> window;

  friend bool operator==(const CommandSettings&,
                         const CommandSettings&) = default;
};

struct ScenarioConfig {
  int64_t n_users = 0;
  int64_t n_sites = 0;
  int64_t n_callers = 0;
  int64_t n_epochs = 0;
  int64_t visits_per_user_per_epoch = 0;
  double noise_rate = kDefaultNoiseRate;
  double interest_skew = 1.0;
  int64_t callers_per_site = 0;
  uint64_t master_seed = 0;
  // As written in the config document; relative paths resolve against
  // `base_dir`.
  std::string taxonomy_path;
  std::string keyword_map_path;
  // Optional; not used by trace generation.
  CommandSettings commands;

  std::filesystem::path base_dir;

  std::filesystem::path ResolvedTaxonomyPath() const;
  std::filesystem::path ResolvedKeywordMapPath() const;
};

absl::Status ValidateScenarioConfig(const ScenarioConfig& config);

// Accepts exactly the ScenarioConfig fields. `noise_rate` and the command
// settings (bits, k_min, caller_a, caller_b, window) are optional.
absl::StatusOr<ScenarioConfig> ParseScenarioConfig(
    std::string_view document, const std::filesystem::path& base_dir);
absl::StatusOr<ScenarioConfig> LoadScenarioConfigFile(
    const std::filesystem::path& path);

// Canonical JSON (sorted keys, no whitespace) of the document fields.
std::string CanonicalConfigJson(const ScenarioConfig& config);

struct UserProfile {
  UserId user_id = 0;
  // Ascending by topic id; non-sensitive topics only; sums to 1.
  std::vector<std::pair<TopicId, double>> interest_weights;
  TopicId top_interest = 0;
  // Binary demographic label.
  int attribute = 0;
};

struct Population {
  std::vector<UserProfile> users;
  std::vector<Site> sites;
  // Parallel to `sites`: callers embedded on each site, ascending.
  std::vector<std::vector<CallerId>> site_callers;
  std::vector<CallerId> callers;
};

// Users get Zipf-shaped interests: each user ranks the non-sensitive topics
// by keyed PRF draws biased towards globally popular topics, and the topic of
// rank r gets weight (1/r)^interest_skew, normalized. Each site carries 1-3 true topics and `callers_per_site`
// callers. The attribute equals "top interest id is even" with probability
// `attribute_correlation` and its negation otherwise.
absl::StatusOr<Population> GeneratePopulation(
    const ScenarioConfig& config, const Taxonomy& taxonomy,
    const KeywordMap& keyword_map,
    double attribute_correlation = kDefaultAttributeCorrelation);

// Exactly visits_per_user_per_epoch events per user and epoch, ordered by
// (epoch, user, sequence). A site is picked with probability proportional to
// the user's interest mass on its true topics plus kSiteFloorWeight.
std::vector<VisitEvent> GenerateVisits(const Population& population,
                                       const ScenarioConfig& config);

}  // namespace topics_sim

#endif  // TOPICS_SIM_TRACEGEN_H_
