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

#include "topics_sim/tracegen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "topics_sim/file_util.h"
#include "topics_sim/prf.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

using nlohmann::json;

constexpr std::string_view kIntegerFields[] = {
    "n_users",  "n_sites",          "n_callers", "n_epochs",
    "visits_per_user_per_epoch", "callers_per_site"};

absl::Status ConfigError(std::string_view what) {
  return absl::InvalidArgumentError(StrCat("config error: ", what));
}

int64_t* IntegerField(ScenarioConfig& config, std::string_view name) {
  if (name == "n_users") return &config.n_users;
  if (name == "n_sites") return &config.n_sites;
  if (name == "n_callers") return &config.n_callers;
  if (name == "n_epochs") return &config.n_epochs;
  if (name == "visits_per_user_per_epoch") {
    return &config.visits_per_user_per_epoch;
  }
  return &config.callers_per_site;
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

// Lexicographically first token for each topic.
std::optional<int64_t>* CommandSetting(CommandSettings& settings,
                                       std::string_view name) {
  if (name == "bits") return &settings.bits;
  if (name == "k_min") return &settings.k_min;
  if (name == "caller_a") return &settings.caller_a;
  if (name == "caller_b") return &settings.caller_b;
  if (name == "window") return &settings.window;
  return nullptr;
}

constexpr std::string_view kTopLevelDomains[] = {
    "com", "net", "org", "info", "de", "fr", "nl", "uk",
    "biz", "se",  "ch",  "at",   "jp", "ca", "us", "example"};

std::unordered_map<TopicId, std::string> TokensByTopic(
    const KeywordMap& keyword_map) {
  std::unordered_map<TopicId, std::string> tokens;
  for (const auto& [token, topic] : keyword_map) tokens.try_emplace(topic, token);
  return tokens;
}

Site MakeSite(SiteId site_id, const ScenarioConfig& config,
              const Taxonomy& taxonomy,
              const std::unordered_map<TopicId, std::string>& tokens) {
  const uint64_t seed = config.master_seed;
  const std::vector<Topic>& all = taxonomy.topics();
  const size_t wanted = std::min<size_t>(
      1 + PrfIndex(3, seed, "site", site_id, "count"), all.size());

  Site site;
  site.site_id = site_id;
  std::set<TopicId> chosen;
  for (int64_t draw = 0; chosen.size() < wanted; ++draw) {
    chosen.insert(all[PrfIndex(all.size(), seed, "site", site_id, "topic", draw)].id);
  }
  site.true_topics.assign(chosen.begin(), chosen.end());

  // A suffix shared by every host would dominate each SimHash, so the
  // top-level domain varies.
  const std::string_view tld =
      kTopLevelDomains[PrfIndex(std::size(kTopLevelDomains), seed, "site",
                                site_id, "tld")];
  if (PrfUnit(seed, "site", site_id, "declared") < kDeclaredSiteFraction) {
    site.declared_topics = site.true_topics;
    site.hostname = StrCat("site", site_id, ".", tld);
  } else {
    std::string hostname;
    for (TopicId topic : site.true_topics) {
      auto it = tokens.find(topic);
      if (it != tokens.end()) StrAppend(hostname, it->second, "-");
    }
    StrAppend(hostname, "site", site_id, ".", tld);
    site.hostname = std::move(hostname);
  }
  return site;
}

std::vector<CallerId> PickCallers(SiteId site_id, const ScenarioConfig& config) {
  std::vector<CallerId> pool(static_cast<size_t>(config.n_callers));
  std::iota(pool.begin(), pool.end(), CallerId{1});
  const size_t k = static_cast<size_t>(config.callers_per_site);
  for (size_t i = 0; i < k; ++i) {
    const size_t j =
        i + PrfIndex(pool.size() - i, config.master_seed, "site", site_id,
                     "caller", static_cast<int64_t>(i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Global Zipf popularity, indexed like `candidates`.
std::vector<double> TopicPopularity(const ScenarioConfig& config,
                                    const std::vector<TopicId>& candidates) {
  std::vector<std::pair<uint64_t, size_t>> order;
  order.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    order.emplace_back(Prf64(config.master_seed, "topic_pop", candidates[i]), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<double> popularity(candidates.size());
  for (size_t rank = 0; rank < order.size(); ++rank) {
    popularity[order[rank].second] =
        std::pow(1.0 / static_cast<double>(rank + 1), kTopicPopularityExponent);
  }
  return popularity;
}

UserProfile MakeUser(UserId user_id, const ScenarioConfig& config,
                     const std::vector<TopicId>& candidates,
                     const std::vector<double>& popularity,
                     double attribute_correlation) {
  const uint64_t seed = config.master_seed;
  // Exponential race: ordering by Exp(1) / popularity ranks the topics as
  // successive draws without replacement, proportional to popularity.
  std::vector<std::pair<double, TopicId>> draws;
  draws.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    const double arrival =
        -std::log1p(-PrfUnit(seed, "pop", user_id, candidates[i]));
    draws.emplace_back(arrival / popularity[i], candidates[i]);
  }
  std::sort(draws.begin(), draws.end());

  UserProfile user;
  user.user_id = user_id;
  user.interest_weights.reserve(draws.size());
  double total = 0.0;
  for (size_t rank = 0; rank < draws.size(); ++rank) {
    const double variate = 1.0 / static_cast<double>(rank + 1);
    const double weight = std::pow(variate, config.interest_skew);
    user.interest_weights.emplace_back(draws[rank].second, weight);
    total += weight;
  }
  for (auto& [topic, weight] : user.interest_weights) weight /= total;
  std::sort(user.interest_weights.begin(), user.interest_weights.end());
  user.top_interest = draws.front().second;

  const int even = user.top_interest % 2 == 0 ? 1 : 0;
  user.attribute = PrfUnit(seed, "attr", user_id) < attribute_correlation
                       ? even
                       : 1 - even;
  return user;
}

}  // namespace

std::filesystem::path ScenarioConfig::ResolvedTaxonomyPath() const {
  return Resolve(base_dir, taxonomy_path);
}

std::filesystem::path ScenarioConfig::ResolvedKeywordMapPath() const {
  return Resolve(base_dir, keyword_map_path);
}

absl::Status ValidateScenarioConfig(const ScenarioConfig& config) {
  const std::pair<std::string_view, int64_t> integers[] = {
      {"n_users", config.n_users},
      {"n_sites", config.n_sites},
      {"n_callers", config.n_callers},
      {"n_epochs", config.n_epochs},
      {"visits_per_user_per_epoch", config.visits_per_user_per_epoch},
      {"callers_per_site", config.callers_per_site}};
  for (const auto& [name, value] : integers) {
    if (value <= 0) {
      return ConfigError(StrCat(name, " must be a positive integer"));
    }
  }
  if (!(config.noise_rate >= 0.0 && config.noise_rate <= 1.0)) {
    return ConfigError("noise_rate must be in [0, 1]");
  }
  if (!(config.interest_skew > 0.0) || !std::isfinite(config.interest_skew)) {
    return ConfigError("interest_skew must be a positive real");
  }
  if (config.callers_per_site > config.n_callers) {
    return ConfigError("callers_per_site must not exceed n_callers");
  }
  if (config.taxonomy_path.empty()) return ConfigError("taxonomy_path is empty");
  if (config.keyword_map_path.empty()) {
    return ConfigError("keyword_map_path is empty");
  }
  const CommandSettings& c = config.commands;
  if (c.bits && (*c.bits < 1 || *c.bits > 64)) {
    return ConfigError("bits must be in [1, 64]");
  }
  for (const auto& [name, value] :
       {std::pair{"k_min", c.k_min}, std::pair{"caller_a", c.caller_a},
        std::pair{"caller_b", c.caller_b}, std::pair{"window", c.window}}) {
    if (value && *value < 1) {
      return ConfigError(StrCat(name, " must be a positive integer"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ScenarioConfig> ParseScenarioConfig(
    std::string_view document, const std::filesystem::path& base_dir) {
  json root = json::parse(document, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    return ConfigError("expected a JSON object");
  }
  ScenarioConfig config;
  config.base_dir = base_dir;
  std::set<std::string> seen;
  for (const auto& [key, value] : root.items()) {
    seen.insert(key);
    if (std::find(std::begin(kIntegerFields), std::end(kIntegerFields), key) !=
        std::end(kIntegerFields)) {
      if (!value.is_number_integer()) {
        return ConfigError(StrCat(key, " must be an integer"));
      }
      *IntegerField(config, key) = value.get<int64_t>();
    } else if (key == "noise_rate" || key == "interest_skew") {
      if (!value.is_number()) {
        return ConfigError(StrCat(key, " must be a number"));
      }
      (key == "noise_rate" ? config.noise_rate : config.interest_skew) =
          value.get<double>();
    } else if (key == "master_seed") {
      if (!value.is_number_unsigned()) {
        return ConfigError("master_seed must be an unsigned 64-bit integer");
      }
      config.master_seed = value.get<uint64_t>();
    } else if (key == "taxonomy_path" || key == "keyword_map_path") {
      if (!value.is_string()) {
        return ConfigError(StrCat(key, " must be a string"));
      }
      (key == "taxonomy_path" ? config.taxonomy_path : config.keyword_map_path) =
          value.get<std::string>();
    } else if (std::optional<int64_t>* setting =
                   CommandSetting(config.commands, key)) {
      if (!value.is_number_integer()) {
        return ConfigError(StrCat(key, " must be an integer"));
      }
      *setting = value.get<int64_t>();
    } else {
      return ConfigError(StrCat("unknown field '", key, "'"));
    }
  }
  for (std::string_view required :
       {"n_users", "n_sites", "n_callers", "n_epochs",
        "visits_per_user_per_epoch", "interest_skew", "callers_per_site",
        "master_seed", "taxonomy_path", "keyword_map_path"}) {
    if (!seen.contains(std::string(required))) {
      return ConfigError(StrCat("missing field '", required, "'"));
    }
  }
  if (absl::Status status = ValidateScenarioConfig(config); !status.ok()) {
    return status;
  }
  return config;
}

absl::StatusOr<ScenarioConfig> LoadScenarioConfigFile(
    const std::filesystem::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  return ParseScenarioConfig(*contents, path.parent_path());
}

std::string CanonicalConfigJson(const ScenarioConfig& config) {
  json doc = {
      {"n_users", config.n_users},
      {"n_sites", config.n_sites},
      {"n_callers", config.n_callers},
      {"n_epochs", config.n_epochs},
      {"visits_per_user_per_epoch", config.visits_per_user_per_epoch},
      {"noise_rate", config.noise_rate},
      {"interest_skew", config.interest_skew},
      {"callers_per_site", config.callers_per_site},
      {"master_seed", config.master_seed},
      {"taxonomy_path", config.taxonomy_path},
      {"keyword_map_path", config.keyword_map_path},
  };
  const CommandSettings& c = config.commands;
  for (const auto& [name, value] :
       {std::pair{"bits", c.bits}, std::pair{"k_min", c.k_min},
        std::pair{"caller_a", c.caller_a}, std::pair{"caller_b", c.caller_b},
        std::pair{"window", c.window}}) {
    if (value) doc[name] = *value;
  }
  return doc.dump();
}

absl::StatusOr<Population> GeneratePopulation(const ScenarioConfig& config,
                                              const Taxonomy& taxonomy,
                                              const KeywordMap& keyword_map,
                                              double attribute_correlation) {
  if (absl::Status status = ValidateScenarioConfig(config); !status.ok()) {
    return status;
  }
  if (!(attribute_correlation >= 0.0 && attribute_correlation <= 1.0)) {
    return absl::InvalidArgumentError("attribute correlation must be in [0, 1]");
  }
  Population population;
  const std::vector<TopicId>& candidates = taxonomy.non_sensitive_ids();
  const std::vector<double> popularity = TopicPopularity(config, candidates);
  population.users.reserve(static_cast<size_t>(config.n_users));
  for (UserId user = 1; user <= config.n_users; ++user) {
    population.users.push_back(MakeUser(user, config, candidates, popularity,
                                        attribute_correlation));
  }
  const auto tokens = TokensByTopic(keyword_map);
  for (SiteId site = 1; site <= config.n_sites; ++site) {
    population.sites.push_back(MakeSite(site, config, taxonomy, tokens));
    population.site_callers.push_back(PickCallers(site, config));
  }
  population.callers.resize(static_cast<size_t>(config.n_callers));
  std::iota(population.callers.begin(), population.callers.end(), CallerId{1});
  return population;
}

std::vector<VisitEvent> GenerateVisits(const Population& population,
                                       const ScenarioConfig& config) {
  const size_t n_sites = population.sites.size();
  std::vector<VisitEvent> events;
  if (n_sites == 0) return events;

  // Per-user cumulative site weights.
  std::vector<std::vector<double>> cumulative;
  cumulative.reserve(population.users.size());
  for (const UserProfile& user : population.users) {
    std::unordered_map<TopicId, double> interest(user.interest_weights.begin(),
                                                 user.interest_weights.end());
    std::vector<double> cum(n_sites);
    double running = 0.0;
    for (size_t s = 0; s < n_sites; ++s) {
      double weight = kSiteFloorWeight;
      for (TopicId topic : population.sites[s].true_topics) {
        if (auto it = interest.find(topic); it != interest.end()) {
          weight += it->second;
        }
      }
      running += weight;
      cum[s] = running;
    }
    cumulative.push_back(std::move(cum));
  }

  events.reserve(population.users.size() *
                 static_cast<size_t>(config.n_epochs) *
                 static_cast<size_t>(config.visits_per_user_per_epoch));
  for (Epoch epoch = 0; epoch < config.n_epochs; ++epoch) {
    for (size_t u = 0; u < population.users.size(); ++u) {
      const UserId user_id = population.users[u].user_id;
      const std::vector<double>& cum = cumulative[u];
      for (int64_t seq = 0; seq < config.visits_per_user_per_epoch; ++seq) {
        const double target =
            PrfUnit(config.master_seed, "visit", user_id, epoch, seq) *
            cum.back();
        size_t index = static_cast<size_t>(
            std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
        index = std::min(index, n_sites - 1);
        events.push_back(VisitEvent{
            .user_id = user_id,
            .site_id = population.sites[index].site_id,
            .epoch = epoch,
            .callers_present = population.site_callers[index],
        });
      }
    }
  }
  return events;
}

}  // namespace topics_sim
