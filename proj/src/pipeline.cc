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

#include "topics_sim/pipeline.h"

#include <set>
#include <unordered_map>

#include "json.hpp"
#include "topics_sim/prf.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

absl::Status FinalizeAll(TopicsEngine& engine, const Population& population,
                         Epoch epoch) {
  for (const UserProfile& user : population.users) {
    absl::StatusOr<std::vector<TopicId>> top =
        engine.FinalizeEpoch(user.user_id, epoch);
    if (!top.ok()) return top.status();
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<GroundTruthRow>> SimulateTopics(
    const Population& population, std::span<const VisitEvent> events,
    const Taxonomy& taxonomy, const KeywordMap& keyword_map,
    uint64_t master_seed, TopicsEngine& engine) {
  for (const UserProfile& user : population.users) {
    absl::Status status =
        engine.AddUser(user.user_id, Prf64(master_seed, "network", user.user_id));
    if (!status.ok()) return status;
  }
  std::unordered_map<SiteId, std::vector<TopicId>> classified;
  for (const Site& site : population.sites) {
    if (absl::Status status = ValidateSite(site, taxonomy); !status.ok()) {
      return status;
    }
    if (absl::Status status = engine.AddSite(site.site_id); !status.ok()) {
      return status;
    }
    classified[site.site_id] = ClassifySite(site, taxonomy, keyword_map);
  }
  for (CallerId caller : population.callers) {
    if (absl::Status status = engine.RegisterCaller(caller); !status.ok()) {
      return status;
    }
  }

  std::vector<GroundTruthRow> rows;
  Epoch current = events.empty() ? 0 : events.front().epoch;
  for (const VisitEvent& event : events) {
    if (event.epoch < current) {
      return absl::InvalidArgumentError(StrCat(
          "events out of epoch order: ", event.epoch, " after ", current));
    }
    while (current < event.epoch) {
      if (absl::Status status = FinalizeAll(engine, population, current);
          !status.ok()) {
        return status;
      }
      ++current;
    }
    auto it = classified.find(event.site_id);
    if (it == classified.end()) {
      return absl::NotFoundError(StrCat("unknown site ", event.site_id));
    }
    if (absl::Status status = engine.RecordVisit(event, it->second);
        !status.ok()) {
      return status;
    }
    for (CallerId caller : event.callers_present) {
      absl::StatusOr<TopicsResponse> response = engine.BrowsingTopics(
          event.user_id, event.site_id, caller, event.epoch, master_seed);
      if (!response.ok()) return response.status();
      AppendResponseRows(event.epoch, event.user_id, event.site_id, caller,
                         *response, rows);
    }
  }
  if (!events.empty()) {
    if (absl::Status status = FinalizeAll(engine, population, current);
        !status.ok()) {
      return status;
    }
  }
  return rows;
}

absl::StatusOr<SimulationResult> RunScenario(const ScenarioConfig& config,
                                             const Taxonomy& taxonomy,
                                             const KeywordMap& keyword_map) {
  absl::StatusOr<Population> population =
      GeneratePopulation(config, taxonomy, keyword_map);
  if (!population.ok()) return population.status();
  SimulationResult result;
  result.population = std::move(*population);
  result.events = GenerateVisits(result.population, config);
  TopicsEngine engine(taxonomy, config.noise_rate);
  absl::StatusOr<std::vector<GroundTruthRow>> rows =
      SimulateTopics(result.population, result.events, taxonomy, keyword_map,
                     config.master_seed, engine);
  if (!rows.ok()) return rows.status();
  result.ground_truth = std::move(*rows);
  result.final_states = engine.users();
  return result;
}

absl::StatusOr<std::vector<CohortAssignment>> CohortsPerEpoch(
    std::span<const Site> sites, std::span<const VisitEvent> events, int width,
    int k_min) {
  std::unordered_map<SiteId, const Site*> by_id;
  for (const Site& site : sites) by_id[site.site_id] = &site;

  std::set<UserId> users;
  Epoch last_epoch = -1;
  for (const VisitEvent& event : events) {
    users.insert(event.user_id);
    last_epoch = std::max(last_epoch, event.epoch);
  }
  // user -> hostname -> cumulative visits, advanced one epoch at a time.
  std::map<UserId, std::map<std::string, int64_t>> history;
  for (UserId user : users) history[user];

  std::vector<CohortAssignment> assignments;
  size_t next = 0;
  for (Epoch epoch = 0; epoch <= last_epoch; ++epoch) {
    for (; next < events.size() && events[next].epoch <= epoch; ++next) {
      auto it = by_id.find(events[next].site_id);
      if (it == by_id.end()) {
        return absl::NotFoundError(
            StrCat("trace references unknown site ", events[next].site_id));
      }
      ++history[events[next].user_id][it->second->hostname];
    }
    std::vector<std::pair<UserId, FeatureVector>> vectors;
    vectors.reserve(history.size());
    for (const auto& [user, hosts] : history) {
      std::vector<HostVisits> visits;
      visits.reserve(hosts.size());
      for (const auto& [host, count] : hosts) visits.push_back({host, count});
      vectors.emplace_back(user, BuildFeatureVector(visits));
    }
    absl::StatusOr<CohortAssignment> assignment =
        AssignCohorts(vectors, width, k_min);
    if (!assignment.ok()) return assignment.status();
    assignments.push_back(std::move(*assignment));
  }
  return assignments;
}

std::string FormatUserStateJson(const std::map<UserId, UserState>& users) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& [id, user] : users) {
    nlohmann::ordered_json top_lists = nlohmann::ordered_json::object();
    for (const auto& [epoch, top] : user.top_lists) {
      top_lists[StrCat(epoch)] = top;
    }
    doc.push_back({{"user_id", user.user_id},
                   {"network_id", user.network_id},
                   {"opt_out", user.opt_out},
                   {"deleted_topics", user.deleted_topics},
                   {"top_lists", top_lists}});
  }
  return doc.dump(1) + "\n";
}

}  // namespace topics_sim
