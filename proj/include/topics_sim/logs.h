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

#ifndef TOPICS_SIM_LOGS_H_
#define TOPICS_SIM_LOGS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "topics_sim/engine.h"
#include "topics_sim/floc.h"
#include "topics_sim/tracegen.h"
#include "topics_sim/types.h"

namespace topics_sim {

// CSV files written by the simulator. All are UTF-8 with LF line endings and
// a fixed header line. Lists inside a field are ';'-separated.

inline constexpr std::string_view kGroundTruthHeader =
    "epoch,user_id,site_id,caller_id,entry_epoch,topic_id,noise";
inline constexpr std::string_view kCallerViewHeader =
    "epoch,user_id,site_id,caller_id,entry_epoch,topic_id";
inline constexpr std::string_view kTraceHeader = "epoch,user_id,site_id,callers";
inline constexpr std::string_view kSitesHeader =
    "site_id,hostname,declared_topics,true_topics,callers";
inline constexpr std::string_view kUsersHeader = "user_id,attribute,top_interest";
inline constexpr std::string_view kCohortHeader = "user_id,cohort_label,prefix_len";

// One row per response entry of a browsing_topics call; a call with an empty
// response is one row without an entry.
struct GroundTruthRow {
  Epoch epoch = 0;
  UserId user_id = 0;
  SiteId site_id = 0;
  CallerId caller_id = 0;
  std::optional<TopicsEntry> entry;

  friend bool operator==(const GroundTruthRow&, const GroundTruthRow&) = default;
};

// What the caller sees: the same rows without the noise flag.
struct CallerViewRow {
  Epoch epoch = 0;
  UserId user_id = 0;
  SiteId site_id = 0;
  CallerId caller_id = 0;
  std::optional<Epoch> entry_epoch;
  std::optional<TopicId> topic_id;

  friend bool operator==(const CallerViewRow&, const CallerViewRow&) = default;
};

void AppendResponseRows(Epoch query_epoch, UserId user_id, SiteId site_id,
                        CallerId caller_id, const TopicsResponse& response,
                        std::vector<GroundTruthRow>& rows);

std::vector<CallerViewRow> ToCallerView(std::span<const GroundTruthRow> rows);

std::string FormatGroundTruthCsv(std::span<const GroundTruthRow> rows);
std::string FormatCallerViewCsv(std::span<const CallerViewRow> rows);
// Both parsers reject a header that differs from the expected one, so a
// caller-view file can never be read as a ground-truth log.
absl::StatusOr<std::vector<GroundTruthRow>> ParseGroundTruthCsv(
    std::string_view csv);
absl::StatusOr<std::vector<CallerViewRow>> ParseCallerViewCsv(
    std::string_view csv);

std::string FormatTraceCsv(std::span<const VisitEvent> events);
absl::StatusOr<std::vector<VisitEvent>> ParseTraceCsv(std::string_view csv);

// Sites with their embedded callers.
std::string FormatSitesCsv(const Population& population);
absl::StatusOr<Population> ParseSitesCsv(std::string_view csv);

std::string FormatUsersCsv(std::span<const UserProfile> users);
// Restores user_id, attribute and top_interest; interest weights are not
// persisted.
absl::StatusOr<std::vector<UserProfile>> ParseUsersCsv(std::string_view csv);

std::string FormatCohortCsv(const CohortAssignment& assignment);

}  // namespace topics_sim

#endif  // TOPICS_SIM_LOGS_H_
