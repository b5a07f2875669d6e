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

#include "topics_sim/taxonomy.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "json.hpp"
#include "topics_sim/file_util.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

using nlohmann::json;

absl::Status ParseError(std::string_view what) {
  return absl::InvalidArgumentError(StrCat("taxonomy parse error: ", what));
}

absl::Status ValidationError(std::string_view what) {
  return absl::InvalidArgumentError(
      StrCat("taxonomy validation error: ", what));
}

}  // namespace

absl::StatusOr<Taxonomy> Taxonomy::Create(std::string version,
                                          std::vector<Topic> topics) {
  Taxonomy taxonomy;
  taxonomy.version_ = std::move(version);
  for (size_t i = 0; i < topics.size(); ++i) {
    const Topic& topic = topics[i];
    if (topic.id <= 0) {
      return ValidationError(StrCat("non-positive topic id ", topic.id));
    }
    if (!taxonomy.index_.emplace(topic.id, i).second) {
      return ValidationError(StrCat("duplicate topic id ", topic.id));
    }
  }
  for (const Topic& topic : topics) {
    if (topic.parent_id && !taxonomy.index_.contains(*topic.parent_id)) {
      return ValidationError(StrCat("topic ", topic.id,
                                          " has dangling parent ",
                                          *topic.parent_id));
    }
  }
  // Walk up from every node; a walk longer than the topic count revisits a
  // node, which means a cycle.
  for (const Topic& topic : topics) {
    std::optional<TopicId> cursor = topic.parent_id;
    size_t steps = 0;
    while (cursor) {
      if (*cursor == topic.id || ++steps > topics.size()) {
        return ValidationError(
            StrCat("parent cycle through topic ", topic.id));
      }
      cursor = topics[taxonomy.index_.at(*cursor)].parent_id;
    }
  }
  for (const Topic& topic : topics) {
    if (!topic.sensitive) taxonomy.non_sensitive_ids_.push_back(topic.id);
  }
  if (taxonomy.non_sensitive_ids_.empty()) {
    return ValidationError("no non-sensitive topics");
  }
  std::sort(taxonomy.non_sensitive_ids_.begin(),
            taxonomy.non_sensitive_ids_.end());
  taxonomy.topics_ = std::move(topics);
  return taxonomy;
}

const Topic* Taxonomy::Find(TopicId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &topics_[it->second];
}

bool Taxonomy::IsSensitive(TopicId id) const {
  const Topic* topic = Find(id);
  return topic == nullptr || topic->sensitive;
}

absl::StatusOr<Taxonomy> LoadTaxonomy(std::string_view document) {
  json root = json::parse(document, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) return ParseError("malformed JSON");
  if (!root.is_object()) return ParseError("top level must be an object");
  if (!root.contains("version") || !root["version"].is_string()) {
    return ParseError("missing string field 'version'");
  }
  if (!root.contains("topics") || !root["topics"].is_array()) {
    return ParseError("missing array field 'topics'");
  }
  std::vector<Topic> topics;
  topics.reserve(root["topics"].size());
  for (const json& entry : root["topics"]) {
    if (!entry.is_object()) return ParseError("topic entry must be an object");
    Topic topic;
    if (!entry.contains("id") || !entry["id"].is_number_integer()) {
      return ParseError("topic 'id' must be an integer");
    }
    topic.id = entry["id"].get<int64_t>();
    if (!entry.contains("label") || !entry["label"].is_string()) {
      return ParseError(StrCat("topic ", topic.id, ": 'label' must be a string"));
    }
    topic.label = entry["label"].get<std::string>();
    if (entry.contains("parent_id") && !entry["parent_id"].is_null()) {
      if (!entry["parent_id"].is_number_integer()) {
        return ParseError(StrCat("topic ", topic.id,
                                       ": 'parent_id' must be an integer or null"));
      }
      topic.parent_id = entry["parent_id"].get<int64_t>();
    }
    if (!entry.contains("sensitive") || !entry["sensitive"].is_boolean()) {
      return ParseError(StrCat("topic ", topic.id, ": 'sensitive' must be a boolean"));
    }
    topic.sensitive = entry["sensitive"].get<bool>();
    topics.push_back(std::move(topic));
  }
  return Taxonomy::Create(root["version"].get<std::string>(), std::move(topics));
}

absl::StatusOr<Taxonomy> LoadTaxonomyFile(const std::filesystem::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  absl::StatusOr<Taxonomy> taxonomy = LoadTaxonomy(*contents);
  if (!taxonomy.ok()) {
    return absl::InvalidArgumentError(
        StrCat(path.string(), ": ", taxonomy.status().message()));
  }
  return taxonomy;
}

std::vector<TopicId> NonSensitiveTopics(const Taxonomy& taxonomy) {
  return taxonomy.non_sensitive_ids();
}

}  // namespace topics_sim
