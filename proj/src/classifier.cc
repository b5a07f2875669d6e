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

#include "topics_sim/classifier.h"

#include <algorithm>

#include "json.hpp"
#include "topics_sim/file_util.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

bool IsTokenChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

void SortUnique(std::vector<TopicId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

}  // namespace

bool IsValidHostname(std::string_view hostname) {
  if (hostname.empty()) return false;
  return std::all_of(hostname.begin(), hostname.end(), [](char c) {
    return IsTokenChar(c) || c == '.' || c == '-';
  });
}

absl::Status ValidateSite(const Site& site, const Taxonomy& taxonomy) {
  if (site.site_id <= 0) {
    return absl::InvalidArgumentError(
        StrCat("site id must be positive, got ", site.site_id));
  }
  if (!IsValidHostname(site.hostname)) {
    return absl::InvalidArgumentError(
        StrCat("invalid hostname '", site.hostname, "'"));
  }
  if (site.declared_topics) {
    if (site.declared_topics->empty()) {
      return absl::InvalidArgumentError(StrCat(
          "site ", site.site_id, " declares an empty topic list"));
    }
    for (TopicId id : *site.declared_topics) {
      if (!taxonomy.Contains(id)) {
        return absl::InvalidArgumentError(StrCat(
            "site ", site.site_id, " declares unknown topic ", id));
      }
    }
  }
  return absl::OkStatus();
}

std::vector<std::string_view> SplitHostname(std::string_view hostname) {
  std::vector<std::string_view> tokens;
  size_t start = 0;
  for (size_t i = 0; i <= hostname.size(); ++i) {
    if (i == hostname.size() || hostname[i] == '.' || hostname[i] == '-') {
      if (i > start) tokens.push_back(hostname.substr(start, i - start));
      start = i + 1;
    }
  }
  return tokens;
}

absl::StatusOr<KeywordMap> LoadKeywordMap(std::string_view document,
                                          const Taxonomy& taxonomy) {
  nlohmann::json root =
      nlohmann::json::parse(document, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    return absl::InvalidArgumentError(
        "keyword map parse error: expected a JSON object");
  }
  KeywordMap keywords;
  for (const auto& [token, value] : root.items()) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), IsTokenChar)) {
      return absl::InvalidArgumentError(
          StrCat("keyword map: invalid token '", token, "'"));
    }
    if (!value.is_number_integer()) {
      return absl::InvalidArgumentError(
          StrCat("keyword map: token '", token, "' must map to an integer"));
    }
    TopicId id = value.get<TopicId>();
    if (!taxonomy.Contains(id)) {
      return absl::InvalidArgumentError(StrCat(
          "keyword map: token '", token, "' maps to unknown topic ", id));
    }
    keywords.emplace(token, id);
  }
  return keywords;
}

absl::StatusOr<KeywordMap> LoadKeywordMapFile(
    const std::filesystem::path& path, const Taxonomy& taxonomy) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  absl::StatusOr<KeywordMap> keywords = LoadKeywordMap(*contents, taxonomy);
  if (!keywords.ok()) {
    return absl::InvalidArgumentError(
        StrCat(path.string(), ": ", keywords.status().message()));
  }
  return keywords;
}

std::vector<TopicId> ClassifySite(const Site& site, const Taxonomy& taxonomy,
                                  const KeywordMap& keyword_map) {
  std::vector<TopicId> topics;
  if (site.declared_topics) {
    for (TopicId id : *site.declared_topics) {
      if (!taxonomy.IsSensitive(id)) topics.push_back(id);
    }
  } else {
    for (std::string_view token : SplitHostname(site.hostname)) {
      auto it = keyword_map.find(token);
      if (it != keyword_map.end() && !taxonomy.IsSensitive(it->second)) {
        topics.push_back(it->second);
      }
    }
  }
  SortUnique(topics);
  return topics;
}

}  // namespace topics_sim
