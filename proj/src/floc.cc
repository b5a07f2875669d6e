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

#include "topics_sim/floc.h"

#include <array>
#include <bit>

#include "absl/status/status.h"
#include "topics_sim/classifier.h"
#include "topics_sim/prf.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

absl::Status CheckWidth(int width) {
  if (width < 1 || width > 64) {
    return absl::InvalidArgumentError(
        StrCat("cohort width must be in [1, 64], got ", width));
  }
  return absl::OkStatus();
}

uint64_t Prefix(const CohortId& id, int prefix_len) {
  if (prefix_len == 0) return 0;
  return id.bits >> (id.width - prefix_len);
}

}  // namespace

FeatureVector BuildFeatureVector(std::span<const HostVisits> history) {
  FeatureVector features;
  for (const HostVisits& entry : history) {
    if (entry.visits <= 0) continue;
    for (std::string_view token : SplitHostname(entry.hostname)) {
      auto it = features.find(token);
      if (it == features.end()) {
        features.emplace(std::string(token), entry.visits);
      } else {
        it->second += entry.visits;
      }
    }
  }
  return features;
}

absl::StatusOr<CohortId> SimHash(const FeatureVector& features, int width) {
  if (absl::Status status = CheckWidth(width); !status.ok()) return status;
  std::array<int64_t, 64> sums{};
  for (const auto& [token, weight] : features) {
    const uint64_t hash = Fnv1a64(token);
    for (int i = 0; i < width; ++i) {
      sums[i] += ((hash >> i) & 1) ? weight : -weight;
    }
  }
  CohortId id{.bits = 0, .width = width};
  for (int i = 0; i < width; ++i) {
    if (sums[i] > 0) id.bits |= uint64_t{1} << i;
  }
  return id;
}

absl::StatusOr<int> Hamming(const CohortId& a, const CohortId& b) {
  if (a.width != b.width) {
    return absl::InvalidArgumentError(StrCat(
        "cohort width mismatch: ", a.width, " vs ", b.width));
  }
  return std::popcount(a.bits ^ b.bits);
}

absl::StatusOr<CohortAssignment> AssignCohortsFromHashes(
    std::span<const std::pair<UserId, CohortId>> hashes, int k_min) {
  if (k_min < 1) {
    return absl::InvalidArgumentError(
        StrCat("k_min must be at least 1, got ", k_min));
  }
  if (hashes.empty()) {
    return absl::InvalidArgumentError("cohort assignment needs at least one user");
  }
  const int width = hashes.front().second.width;
  if (absl::Status status = CheckWidth(width); !status.ok()) return status;
  for (const auto& [user, id] : hashes) {
    if (id.width != width) {
      return absl::InvalidArgumentError(
          StrCat("user ", user, " has cohort width ", id.width,
                       ", expected ", width));
    }
  }

  auto satisfies = [&](int prefix_len) {
    std::map<uint64_t, int64_t> sizes;
    for (const auto& [user, id] : hashes) ++sizes[Prefix(id, prefix_len)];
    for (const auto& [label, size] : sizes) {
      if (size < k_min) return false;
    }
    return true;
  };

  // p = 0 is one universal cohort. It is accepted unconditionally since no
  // coarser grouping exists.
  int prefix_len = width;
  while (prefix_len > 0 && !satisfies(prefix_len)) --prefix_len;

  CohortAssignment assignment;
  assignment.prefix_len = prefix_len;
  for (const auto& [user, id] : hashes) {
    assignment.labels[user] = Prefix(id, prefix_len);
  }
  return assignment;
}

absl::StatusOr<CohortAssignment> AssignCohorts(
    std::span<const std::pair<UserId, FeatureVector>> users, int width,
    int k_min) {
  if (absl::Status status = CheckWidth(width); !status.ok()) return status;
  std::vector<std::pair<UserId, CohortId>> hashes;
  hashes.reserve(users.size());
  for (const auto& [user, features] : users) {
    absl::StatusOr<CohortId> id = SimHash(features, width);
    if (!id.ok()) return id.status();
    hashes.emplace_back(user, *id);
  }
  return AssignCohortsFromHashes(hashes, k_min);
}

}  // namespace topics_sim
