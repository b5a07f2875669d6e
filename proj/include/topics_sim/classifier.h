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

#ifndef TOPICS_SIM_CLASSIFIER_H_
#define TOPICS_SIM_CLASSIFIER_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "topics_sim/taxonomy.h"
#include "topics_sim/types.h"

namespace topics_sim {

struct Site {
  SiteId site_id = 0;
  std::string hostname;
  // Topics the site declares about itself in its page metadata.
  std::optional<std::vector<TopicId>> declared_topics;
  // Simulation ground truth; never consulted by the classifier.
  std::vector<TopicId> true_topics;
};

// Hostname token -> topic id.
using KeywordMap = std::map<std::string, TopicId, std::less<>>;

// Checks the hostname alphabet ([a-z0-9.-], non-empty) and that declared
// topics, when present, are non-empty and exist in `taxonomy`.
absl::Status ValidateSite(const Site& site, const Taxonomy& taxonomy);
bool IsValidHostname(std::string_view hostname);

// Splits on '.' and '-'. Empty segments are skipped.
std::vector<std::string_view> SplitHostname(std::string_view hostname);

// Parses a JSON object of token -> topic id. Tokens must be non-empty
// lowercase [a-z0-9] and every id must exist in `taxonomy`.
absl::StatusOr<KeywordMap> LoadKeywordMap(std::string_view document,
                                          const Taxonomy& taxonomy);
absl::StatusOr<KeywordMap> LoadKeywordMapFile(
    const std::filesystem::path& path, const Taxonomy& taxonomy);

// Browser-side page classification. Declared topics take precedence over the
// hostname keywords. The result is ascending, duplicate free, and never holds
// a sensitive topic; an unclassifiable site yields an empty list.
std::vector<TopicId> ClassifySite(const Site& site, const Taxonomy& taxonomy,
                                  const KeywordMap& keyword_map);

}  // namespace topics_sim

#endif  // TOPICS_SIM_CLASSIFIER_H_
