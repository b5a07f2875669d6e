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

#include "topics_sim/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "json.hpp"
#include "topics_sim/prf.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

std::string Table(
    std::string_view title,
    const std::vector<std::pair<std::string, std::string>>& rows) {
  size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::string out = StrCat(title, "\n");
  for (const auto& [key, value] : rows) {
    StrAppend(out, "  ", key, std::string(width - key.size() + 2, ' '),
                    value, "\n");
  }
  return out;
}

std::string Fixed(double value) { return fmt::format("{:.6f}", value); }

}  // namespace

absl::StatusOr<double> MeasureNoiseRate(std::span<const GroundTruthRow> log) {
  int64_t entries = 0;
  int64_t noisy = 0;
  for (const GroundTruthRow& row : log) {
    if (!row.entry) continue;
    ++entries;
    if (row.entry->noise) ++noisy;
  }
  if (entries == 0) {
    return absl::InvalidArgumentError("log has no entry rows");
  }
  return static_cast<double>(noisy) / static_cast<double>(entries);
}

absl::StatusOr<UniquenessReport> CohortSequenceUniqueness(
    std::span<const std::map<UserId, uint64_t>> per_epoch) {
  if (per_epoch.empty() || per_epoch.front().empty()) {
    return absl::InvalidArgumentError("no cohort assignments");
  }
  const std::map<UserId, uint64_t>& first = per_epoch.front();
  for (size_t e = 1; e < per_epoch.size(); ++e) {
    const auto& epoch = per_epoch[e];
    if (epoch.size() != first.size() ||
        !std::equal(epoch.begin(), epoch.end(), first.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; })) {
      return absl::InvalidArgumentError(StrCat(
          "epoch ", e, " does not label the same users as epoch 0"));
    }
  }
  std::map<std::vector<uint64_t>, int64_t> counts;
  std::vector<std::vector<uint64_t>> sequences;
  sequences.reserve(first.size());
  for (const auto& [user, label] : first) {
    std::vector<uint64_t> sequence;
    sequence.reserve(per_epoch.size());
    for (const auto& epoch : per_epoch) sequence.push_back(epoch.at(user));
    ++counts[sequence];
    sequences.push_back(std::move(sequence));
  }
  int64_t unique = 0;
  for (const auto& sequence : sequences) {
    if (counts[sequence] == 1) ++unique;
  }
  UniquenessReport report;
  report.n_users = static_cast<int64_t>(first.size());
  report.n_epochs = static_cast<int64_t>(per_epoch.size());
  report.fraction_unique =
      static_cast<double>(unique) / static_cast<double>(report.n_users);
  return report;
}

ObservationTable ReconstructObservations(std::span<const CallerViewRow> log,
                                         CallerId caller) {
  ObservationTable table;
  for (const CallerViewRow& row : log) {
    if (row.caller_id != caller) continue;
    TopicSequence& sequence = table[row.user_id];
    if (row.entry_epoch && row.topic_id) {
      ++sequence[*row.entry_epoch][*row.topic_id];
    }
  }
  return table;
}

double MultisetJaccard(const TopicMultiset& a, const TopicMultiset& b) {
  int64_t intersection = 0;
  int64_t union_size = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      union_size += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      union_size += ib->second;
      ++ib;
    } else {
      intersection += std::min(ia->second, ib->second);
      union_size += std::max(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  if (union_size == 0) return 0.0;
  return static_cast<double>(intersection) / static_cast<double>(union_size);
}

namespace {

using Window = std::vector<Epoch>;

double Similarity(const TopicSequence& a, const TopicSequence& b,
                  const Window& window) {
  static const TopicMultiset kEmpty;
  double total = 0.0;
  for (Epoch epoch : window) {
    auto ia = a.find(epoch);
    auto ib = b.find(epoch);
    total += MultisetJaccard(ia == a.end() ? kEmpty : ia->second,
                             ib == b.end() ? kEmpty : ib->second);
  }
  return total;
}

bool HasTopicsIn(const TopicSequence& sequence, const Window& window) {
  for (Epoch epoch : window) {
    auto it = sequence.find(epoch);
    if (it != sequence.end() && !it->second.empty()) return true;
  }
  return false;
}

// Sees only pseudonymous candidates, ascending by pseudonym.
uint64_t BestMatch(const TopicSequence& target,
                   const std::vector<std::pair<uint64_t, const TopicSequence*>>&
                       candidates,
                   const Window& window) {
  uint64_t best = candidates.front().first;
  double best_score = -1.0;
  for (const auto& [pseudonym, sequence] : candidates) {
    const double score = Similarity(target, *sequence, window);
    if (score > best_score) {
      best_score = score;
      best = pseudonym;
    }
  }
  return best;
}

}  // namespace

absl::StatusOr<LinkageReport> CrossCallerLinkage(const ObservationTable& a,
                                                 const ObservationTable& b,
                                                 int window, uint64_t seed) {
  if (window < 1) {
    return absl::InvalidArgumentError("linkage window must be at least 1");
  }
  if (a.empty() || b.empty()) {
    return absl::InvalidArgumentError("empty observation set");
  }
  std::set<Epoch> epochs;
  for (const ObservationTable* table : {&a, &b}) {
    for (const auto& [user, sequence] : *table) {
      for (const auto& [epoch, topics] : sequence) epochs.insert(epoch);
    }
  }
  if (epochs.empty()) {
    return absl::InvalidArgumentError("no topics observed by either caller");
  }
  Window recent(epochs.begin(), epochs.end());
  if (recent.size() > static_cast<size_t>(window)) {
    recent.erase(recent.begin(), recent.end() - window);
  }

  std::map<uint64_t, UserId> identity;
  std::vector<std::pair<uint64_t, const TopicSequence*>> candidates;
  candidates.reserve(b.size());
  for (const auto& [user, sequence] : b) {
    const uint64_t pseudonym = Prf64(seed, "pseudonym", user);
    identity[pseudonym] = user;
    candidates.emplace_back(pseudonym, &sequence);
  }
  std::sort(candidates.begin(), candidates.end());

  int64_t considered = 0;
  int64_t correct = 0;
  for (const auto& [user, sequence] : a) {
    if (!HasTopicsIn(sequence, recent)) continue;
    ++considered;
    if (identity.at(BestMatch(sequence, candidates, recent)) == user) ++correct;
  }
  if (considered == 0) {
    return absl::InvalidArgumentError(
        "caller A observed no topics in the linkage window");
  }
  LinkageReport report;
  report.n_users = considered;
  report.accuracy = static_cast<double>(correct) / static_cast<double>(considered);
  report.baseline = 1.0 / static_cast<double>(considered);
  report.method = std::string(kLinkageMethod);
  return report;
}

double PluginMutualInformation(std::span<const uint64_t> labels,
                               std::span<const int> attributes) {
  const double n = static_cast<double>(labels.size());
  std::map<std::pair<uint64_t, int>, int64_t> joint;
  std::map<uint64_t, int64_t> by_label;
  std::map<int, int64_t> by_attribute;
  for (size_t i = 0; i < labels.size(); ++i) {
    ++joint[{labels[i], attributes[i]}];
    ++by_label[labels[i]];
    ++by_attribute[attributes[i]];
  }
  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    const double pxy = static_cast<double>(count) / n;
    const double px = static_cast<double>(by_label[key.first]) / n;
    const double py = static_cast<double>(by_attribute[key.second]) / n;
    mi += pxy * std::log(pxy / (px * py));
  }
  return std::max(mi, 0.0);
}

absl::StatusOr<CorrelationReport> CohortAttributeCorrelation(
    const std::map<UserId, uint64_t>& cohorts,
    const std::map<UserId, int>& attributes, uint64_t seed) {
  if (cohorts.size() < 2) {
    return absl::InvalidArgumentError(
        "correlation needs at least two users");
  }
  std::vector<uint64_t> labels;
  std::vector<int> attrs;
  labels.reserve(cohorts.size());
  attrs.reserve(cohorts.size());
  for (const auto& [user, label] : cohorts) {
    auto it = attributes.find(user);
    if (it == attributes.end()) {
      return absl::InvalidArgumentError(
          StrCat("user ", user, " has no attribute"));
    }
    labels.push_back(label);
    attrs.push_back(it->second);
  }

  CorrelationReport report;
  report.n_users = static_cast<int64_t>(labels.size());
  report.mutual_information = PluginMutualInformation(labels, attrs);
  double baseline = 0.0;
  for (int round = 0; round < kShuffleRounds; ++round) {
    std::vector<int> shuffled = attrs;
    for (size_t i = shuffled.size() - 1; i > 0; --i) {
      const size_t j = PrfIndex(i + 1, seed, "shuffle", round,
                                static_cast<int64_t>(i));
      std::swap(shuffled[i], shuffled[j]);
    }
    baseline += PluginMutualInformation(labels, shuffled);
  }
  report.shuffled_baseline = baseline / kShuffleRounds;
  return report;
}

std::string ToJson(const LinkageReport& report) {
  nlohmann::ordered_json doc = {{"n_users", report.n_users},
                                {"accuracy", report.accuracy},
                                {"baseline", report.baseline},
                                {"method", report.method}};
  return doc.dump(2) + "\n";
}

std::string ToJson(const UniquenessReport& report) {
  nlohmann::ordered_json doc = {{"n_users", report.n_users},
                                {"n_epochs", report.n_epochs},
                                {"fraction_unique", report.fraction_unique}};
  return doc.dump(2) + "\n";
}

std::string ToJson(const CorrelationReport& report) {
  nlohmann::ordered_json doc = {
      {"n_users", report.n_users},
      {"mutual_information", report.mutual_information},
      {"shuffled_baseline", report.shuffled_baseline}};
  return doc.dump(2) + "\n";
}

std::string ToTable(const LinkageReport& report) {
  return Table("linkage", {{"n_users", StrCat(report.n_users)},
                           {"accuracy", Fixed(report.accuracy)},
                           {"baseline", Fixed(report.baseline)},
                           {"method", report.method}});
}

std::string ToTable(const UniquenessReport& report) {
  return Table("cohort sequence uniqueness",
               {{"n_users", StrCat(report.n_users)},
                {"n_epochs", StrCat(report.n_epochs)},
                {"fraction_unique", Fixed(report.fraction_unique)}});
}

std::string ToTable(const CorrelationReport& report) {
  return Table("cohort/attribute correlation",
               {{"n_users", StrCat(report.n_users)},
                {"mutual_information", Fixed(report.mutual_information)},
                {"shuffled_baseline", Fixed(report.shuffled_baseline)}});
}

}  // namespace topics_sim
