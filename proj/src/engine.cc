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

#include "topics_sim/engine.h"

#include <algorithm>
#include <limits>

#include "topics_sim/prf.h"
#include "topics_sim/strings.h"

namespace topics_sim {

TopicsEngine::TopicsEngine(const Taxonomy& taxonomy, double noise_rate)
    : taxonomy_(&taxonomy), noise_rate_(noise_rate) {}

absl::Status TopicsEngine::AddUser(UserId user_id, uint64_t network_id) {
  if (user_id <= 0) {
    return absl::InvalidArgumentError(
        StrCat("user id must be positive, got ", user_id));
  }
  UserState state;
  state.user_id = user_id;
  state.network_id = network_id;
  if (!users_.emplace(user_id, std::move(state)).second) {
    return absl::AlreadyExistsError(StrCat("duplicate user ", user_id));
  }
  return absl::OkStatus();
}

absl::Status TopicsEngine::AddSite(SiteId site_id) {
  if (site_id <= 0) {
    return absl::InvalidArgumentError(
        StrCat("site id must be positive, got ", site_id));
  }
  sites_.insert(site_id);
  return absl::OkStatus();
}

absl::Status TopicsEngine::RegisterCaller(CallerId caller_id) {
  observed_.try_emplace(caller_id);
  return absl::OkStatus();
}

absl::StatusOr<UserState*> TopicsEngine::MutableUser(UserId user_id) {
  auto it = users_.find(user_id);
  if (it == users_.end()) {
    return absl::NotFoundError(StrCat("unknown user ", user_id));
  }
  return &it->second;
}

const UserState* TopicsEngine::FindUser(UserId user_id) const {
  auto it = users_.find(user_id);
  return it == users_.end() ? nullptr : &it->second;
}

absl::Status TopicsEngine::RecordVisit(const VisitEvent& event,
                                       std::span<const TopicId> topics_of_site) {
  absl::StatusOr<UserState*> user = MutableUser(event.user_id);
  if (!user.ok()) return user.status();
  if (!sites_.contains(event.site_id)) {
    return absl::NotFoundError(StrCat("unknown site ", event.site_id));
  }
  if (event.epoch < 0 || event.epoch < (*user)->last_epoch) {
    return absl::FailedPreconditionError(
        StrCat("visit epoch ", event.epoch, " precedes epoch ",
                     (*user)->last_epoch, " for user ", event.user_id));
  }
  for (CallerId caller : event.callers_present) {
    if (!observed_.contains(caller)) {
      return absl::NotFoundError(StrCat("unregistered caller ", caller));
    }
  }
  (*user)->last_epoch = event.epoch;
  if (topics_of_site.empty()) return absl::OkStatus();

  std::map<TopicId, int64_t>& counts = (*user)->counters[event.epoch];
  for (TopicId topic : topics_of_site) ++counts[topic];

  if ((*user)->opt_out) return absl::OkStatus();
  const ObservationKey key{event.user_id, event.epoch};
  for (CallerId caller : event.callers_present) {
    observed_[caller][key].insert(topics_of_site.begin(), topics_of_site.end());
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<TopicId>> TopicsEngine::FinalizeEpoch(UserId user_id,
                                                                 Epoch epoch) {
  absl::StatusOr<UserState*> user_or = MutableUser(user_id);
  if (!user_or.ok()) return user_or.status();
  UserState& user = **user_or;

  std::vector<std::pair<TopicId, int64_t>> ranked;
  if (auto it = user.counters.find(epoch); it != user.counters.end()) {
    for (const auto& [topic, count] : it->second) {
      if (taxonomy_->IsSensitive(topic) || user.deleted_topics.contains(topic)) {
        continue;
      }
      ranked.emplace_back(topic, count);
    }
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > kTopTopicsPerEpoch) ranked.resize(kTopTopicsPerEpoch);

  std::vector<TopicId> top;
  top.reserve(ranked.size());
  for (const auto& [topic, count] : ranked) top.push_back(topic);
  user.top_lists[epoch] = top;
  user.last_epoch = std::max(user.last_epoch, epoch);

  // Counters are kept for epoch - 3 onwards; top lists and observations only
  // for the epochs a query after this one can still reach.
  user.counters.erase(user.counters.begin(),
                      user.counters.lower_bound(epoch - kRetainedEpochs));
  const Epoch oldest_retained = epoch - kRetainedEpochs + 1;
  user.top_lists.erase(user.top_lists.begin(),
                       user.top_lists.lower_bound(oldest_retained));
  for (auto& [caller, observations] : observed_) {
    observations.erase(
        observations.lower_bound(
            {user_id, std::numeric_limits<Epoch>::min()}),
        observations.lower_bound({user_id, oldest_retained}));
  }
  return top;
}

absl::StatusOr<TopicsResponse> TopicsEngine::BrowsingTopics(
    UserId user_id, SiteId site_id, CallerId caller_id, Epoch query_epoch,
    uint64_t master_seed) const {
  const UserState* user = FindUser(user_id);
  if (user == nullptr) {
    return absl::NotFoundError(StrCat("unknown user ", user_id));
  }
  auto caller_it = observed_.find(caller_id);
  if (caller_it == observed_.end()) {
    return absl::NotFoundError(StrCat("unregistered caller ", caller_id));
  }
  TopicsResponse response;
  if (user->opt_out) return response;

  const std::vector<TopicId>& noise_pool = taxonomy_->non_sensitive_ids();
  for (Epoch back = 1; back <= kRetainedEpochs; ++back) {
    const Epoch epoch = query_epoch - back;
    if (epoch < 0) break;
    auto top_it = user->top_lists.find(epoch);
    // An epoch without top topics contributes nothing, noise included.
    if (top_it == user->top_lists.end() || top_it->second.empty()) continue;
    const std::vector<TopicId>& top = top_it->second;

    TopicsEntry entry{.epoch = epoch};
    if (PrfUnit(master_seed, "noise", user_id, epoch, site_id, caller_id) <
        noise_rate_) {
      entry.topic = noise_pool[PrfIndex(noise_pool.size(), master_seed,
                                        "noise_topic", user_id, epoch, site_id,
                                        caller_id)];
      entry.noise = true;
    } else {
      entry.topic =
          top[PrfIndex(top.size(), master_seed, "select", user_id, epoch, site_id)];
      auto obs_it = caller_it->second.find({user_id, epoch});
      if (obs_it == caller_it->second.end() ||
          !obs_it->second.contains(entry.topic)) {
        continue;
      }
    }
    const bool duplicate =
        std::any_of(response.entries.begin(), response.entries.end(),
                    [&](const TopicsEntry& e) { return e.topic == entry.topic; });
    if (!duplicate) response.entries.push_back(entry);
  }
  return response;
}

absl::StatusOr<std::map<Epoch, std::vector<TopicId>>>
TopicsEngine::UserViewTopics(UserId user_id) const {
  const UserState* user = FindUser(user_id);
  if (user == nullptr) {
    return absl::NotFoundError(StrCat("unknown user ", user_id));
  }
  return user->top_lists;
}

absl::Status TopicsEngine::UserDeleteTopic(UserId user_id, TopicId topic_id) {
  absl::StatusOr<UserState*> user = MutableUser(user_id);
  if (!user.ok()) return user.status();
  (*user)->deleted_topics.insert(topic_id);
  for (auto& [epoch, top] : (*user)->top_lists) {
    std::erase(top, topic_id);
  }
  return absl::OkStatus();
}

absl::Status TopicsEngine::SetOptOut(UserId user_id, bool value) {
  absl::StatusOr<UserState*> user = MutableUser(user_id);
  if (!user.ok()) return user.status();
  (*user)->opt_out = value;
  return absl::OkStatus();
}

std::set<TopicId> TopicsEngine::ObservedTopics(CallerId caller_id,
                                               UserId user_id,
                                               Epoch epoch) const {
  auto caller_it = observed_.find(caller_id);
  if (caller_it == observed_.end()) return {};
  auto it = caller_it->second.find({user_id, epoch});
  if (it == caller_it->second.end()) return {};
  return it->second;
}

}  // namespace topics_sim
