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

#ifndef TOPICS_SIM_PIPELINE_H_
#define TOPICS_SIM_PIPELINE_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "topics_sim/classifier.h"
#include "topics_sim/engine.h"
#include "topics_sim/floc.h"
#include "topics_sim/logs.h"
#include "topics_sim/taxonomy.h"
#include "topics_sim/tracegen.h"

namespace topics_sim {

// Registers the population with `engine`, then replays `events` in order:
// each visit is classified and recorded, and every caller on the page issues
// one browsing_topics query for the visit's epoch. All users are finalized
// at the end of every epoch. Returns the ground-truth response log.
absl::StatusOr<std::vector<GroundTruthRow>> SimulateTopics(
    const Population& population, std::span<const VisitEvent> events,
    const Taxonomy& taxonomy, const KeywordMap& keyword_map,
    uint64_t master_seed, TopicsEngine& engine);

struct SimulationResult {
  Population population;
  std::vector<VisitEvent> events;
  std::vector<GroundTruthRow> ground_truth;
  std::map<UserId, UserState> final_states;
};

// Trace generation followed by SimulateTopics.
absl::StatusOr<SimulationResult> RunScenario(const ScenarioConfig& config,
                                             const Taxonomy& taxonomy,
                                             const KeywordMap& keyword_map);

// Cohort assignment for each epoch 0..max epoch in `events`, computed from
// every user's cumulative history up to and including that epoch.
absl::StatusOr<std::vector<CohortAssignment>> CohortsPerEpoch(
    std::span<const Site> sites, std::span<const VisitEvent> events, int width,
    int k_min);

// JSON dump of the engine's per-user state.
std::string FormatUserStateJson(const std::map<UserId, UserState>& users);

}  // namespace topics_sim

#endif  // TOPICS_SIM_PIPELINE_H_
