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

#ifndef TOPICS_SIM_ANALYSIS_H_
#define TOPICS_SIM_ANALYSIS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "topics_sim/logs.h"
#include "topics_sim/types.h"

namespace topics_sim {

struct LinkageReport {
  int64_t n_users = 0;
  double accuracy = 0.0;
  double baseline = 0.0;
  std::string method;
};

struct UniquenessReport {
  int64_t n_users = 0;
  int64_t n_epochs = 0;
  double fraction_unique = 0.0;
};

struct CorrelationReport {
  int64_t n_users = 0;
  // Nats.
  double mutual_information = 0.0;
  double shuffled_baseline = 0.0;
};

// Fraction of entry rows whose noise flag is set. Only a ground-truth log
// carries the flag; the caller view has no such column.
absl::StatusOr<double> MeasureNoiseRate(std::span<const GroundTruthRow> log);

// Fraction of users whose tuple of cohort labels over all epochs is shared
// with nobody else. Every epoch must label the same set of users.
absl::StatusOr<UniquenessReport> CohortSequenceUniqueness(
    std::span<const std::map<UserId, uint64_t>> per_epoch);

using TopicMultiset = std::map<TopicId, int64_t>;
// entry epoch -> topics received for that epoch.
using TopicSequence = std::map<Epoch, TopicMultiset>;
using ObservationTable = std::map<UserId, TopicSequence>;

// What `caller` learned per user from its own responses.
ObservationTable ReconstructObservations(std::span<const CallerViewRow> log,
                                         CallerId caller);

// sum(min) / sum(max) over topic counts; 0 when both are empty.
double MultisetJaccard(const TopicMultiset& a, const TopicMultiset& b);

inline constexpr std::string_view kLinkageMethod = "multiset-jaccard-sum";

// Links every A-side user with at least one topic in the last `window`
// epochs to the B-side user maximizing the summed per-epoch multiset Jaccard
// similarity. B-side identities are replaced by keyed pseudonyms before
// matching; ties go to the smallest pseudonym. Accuracy is checked against
// the true identities afterwards.
absl::StatusOr<LinkageReport> CrossCallerLinkage(const ObservationTable& a,
                                                 const ObservationTable& b,
                                                 int window, uint64_t seed);

// Plug-in mutual information (nats) between labels and binary attributes.
double PluginMutualInformation(std::span<const uint64_t> labels,
                               std::span<const int> attributes);

inline constexpr int kShuffleRounds = 16;

// MI between cohort and attribute, next to the mean MI over kShuffleRounds
// keyed shuffles of the attribute column.
absl::StatusOr<CorrelationReport> CohortAttributeCorrelation(
    const std::map<UserId, uint64_t>& cohorts,
    const std::map<UserId, int>& attributes, uint64_t seed);

std::string ToJson(const LinkageReport& report);
std::string ToJson(const UniquenessReport& report);
std::string ToJson(const CorrelationReport& report);

// Aligned two-column text tables for standard output.
std::string ToTable(const LinkageReport& report);
std::string ToTable(const UniquenessReport& report);
std::string ToTable(const CorrelationReport& report);

}  // namespace topics_sim

#endif  // TOPICS_SIM_ANALYSIS_H_
