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

#ifndef TOPICS_SIM_FLOC_H_
#define TOPICS_SIM_FLOC_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "topics_sim/types.h"

namespace topics_sim {

// Hostname token -> accumulated visit count (>= 1).
using FeatureVector = std::map<std::string, int64_t, std::less<>>;

struct CohortId {
  uint64_t bits = 0;
  int width = 0;

  friend bool operator==(const CohortId&, const CohortId&) = default;
};

struct HostVisits {
  std::string hostname;
  int64_t visits = 0;
};

// Splits each hostname on '.' and '-' and sums visit counts per token.
FeatureVector BuildFeatureVector(std::span<const HostVisits> history);

// Weighted SimHash. For bit i < width, sums +weight over tokens whose
// FNV-1a 64 hash has bit i set and -weight otherwise; the output bit is 1
// iff the sum is strictly positive.
absl::StatusOr<CohortId> SimHash(const FeatureVector& features, int width);

// Fails unless both ids have the same width.
absl::StatusOr<int> Hamming(const CohortId& a, const CohortId& b);

struct CohortAssignment {
  // user -> top `prefix_len` bits of the user's SimHash.
  std::map<UserId, uint64_t> labels;
  int prefix_len = 0;
};

// Truncates every SimHash to its longest common prefix length p in [0, width]
// for which each non-empty cohort still has at least `k_min` members.
absl::StatusOr<CohortAssignment> AssignCohorts(
    std::span<const std::pair<UserId, FeatureVector>> users, int width,
    int k_min);

// Same, starting from precomputed hashes of equal width.
absl::StatusOr<CohortAssignment> AssignCohortsFromHashes(
    std::span<const std::pair<UserId, CohortId>> hashes, int k_min);

}  // namespace topics_sim

#endif  // TOPICS_SIM_FLOC_H_
