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

#ifndef TOPICS_SIM_ENGINE_H_
#define TOPICS_SIM_ENGINE_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "topics_sim/taxonomy.h"
#include "topics_sim/types.h"

namespace topics_sim {

inline constexpr double kDefaultNoiseRate = 0.05;
inline constexpr size_t kTopTopicsPerEpoch = 5;
// Number of completed epochs a response may draw from.
inline constexpr Epoch kRetainedEpochs = 3;

struct VisitEvent {
  UserId user_id = 0;
  SiteId site_id = 0;
  Epoch epoch = 0;
  // Callers whose code is embedded on the page. Duplicate free.
  std::vector<CallerId> callers_present;

  friend bool operator==(const VisitEvent&, const VisitEvent&) = default;
};

struct UserState {
  UserId user_id = 0;
  // What a caller sees of the user's network address on contact.
  uint64_t network_id = 0;
  bool opt_out = false;
  std::set<TopicId> deleted_topics;
  std::map<Epoch, std::map<TopicId, int64_t>> counters;
  // Finalized top topics, at most kTopTopicsPerEpoch each, for the last
  // kRetainedEpochs finalized epochs.
  std::map<Epoch, std::vector<TopicId>> top_lists;
  // Latest epoch passed to RecordVisit or FinalizeEpoch.
  Epoch last_epoch = -1;
};

struct TopicsEntry {
  Epoch epoch = 0;
  TopicId topic = 0;
  // Ground truth only; a caller never sees this flag.
  bool noise = false;

  friend bool operator==(const TopicsEntry&, const TopicsEntry&) = default;
};

struct TopicsResponse {
  std::vector<TopicsEntry> entries;

  friend bool operator==(const TopicsResponse&, const TopicsResponse&) = default;
};

// The Topics API state machine for a population of users.
//
// Visits accumulate per-epoch topic counts; FinalizeEpoch turns a week of
// counts into the user's top topics; BrowsingTopics answers a caller's query
// from the three completed epochs before the query epoch. Each caller only
// receives non-noise topics it has itself observed for that user and epoch.
//
// Every random decision is a keyed PRF evaluation (see prf.h), so a query is
// a pure function of the engine state and its key:
//   noise draw     ("noise",       user, epoch, site, caller) vs noise_rate
//   noise topic    ("noise_topic", user, epoch, site, caller) over the
//                  ascending non-sensitive ids
//   stable select  ("select",      user, epoch, site) over the top list
//
// Not internally synchronized. Distinct users may be mutated from different
// threads only through external partitioning; const queries may run
// concurrently with each other.
class TopicsEngine {
 public:
  // `taxonomy` must outlive the engine.
  explicit TopicsEngine(const Taxonomy& taxonomy,
                        double noise_rate = kDefaultNoiseRate);

  double noise_rate() const { return noise_rate_; }

  absl::Status AddUser(UserId user_id, uint64_t network_id);
  absl::Status AddSite(SiteId site_id);
  absl::Status RegisterCaller(CallerId caller_id);

  // Counts one visit to every topic of the site and marks those topics as
  // observed by each caller present on the page. Observations are suppressed
  // while the user has opted out; counts are not.
  absl::Status RecordVisit(const VisitEvent& event,
                           std::span<const TopicId> topics_of_site);

  // Ranks the user's counts for `epoch` (count descending, then topic id
  // ascending), skipping sensitive and deleted topics, keeps the top five and
  // stores them. Drops counters older than epoch - 3 and top lists and
  // observations that fall out of the retention window.
  absl::StatusOr<std::vector<TopicId>> FinalizeEpoch(UserId user_id,
                                                     Epoch epoch);

  absl::StatusOr<TopicsResponse> BrowsingTopics(UserId user_id, SiteId site_id,
                                                CallerId caller_id,
                                                Epoch query_epoch,
                                                uint64_t master_seed) const;

  absl::StatusOr<std::map<Epoch, std::vector<TopicId>>> UserViewTopics(
      UserId user_id) const;
  absl::Status UserDeleteTopic(UserId user_id, TopicId topic_id);
  absl::Status SetOptOut(UserId user_id, bool value);

  // nullptr for unknown users.
  const UserState* FindUser(UserId user_id) const;
  const std::map<UserId, UserState>& users() const { return users_; }

  // Empty for unknown callers or nothing observed.
  std::set<TopicId> ObservedTopics(CallerId caller_id, UserId user_id,
                                   Epoch epoch) const;

 private:
  using ObservationKey = std::pair<UserId, Epoch>;

  absl::StatusOr<UserState*> MutableUser(UserId user_id);

  const Taxonomy* taxonomy_;
  double noise_rate_;
  std::map<UserId, UserState> users_;
  std::set<SiteId> sites_;
  std::map<CallerId, std::map<ObservationKey, std::set<TopicId>>> observed_;
};

}  // namespace topics_sim

#endif  // TOPICS_SIM_ENGINE_H_
