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

#ifndef TOPICS_SIM_TAXONOMY_H_
#define TOPICS_SIM_TAXONOMY_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "topics_sim/types.h"

namespace topics_sim {

struct Topic {
  TopicId id = 0;
  std::string label;
  std::optional<TopicId> parent_id;
  // Sensitive topics are never emitted by any API-facing operation. The flag
  // applies to this topic only and is not inherited by its children.
  bool sensitive = false;
};

// The fixed set of interest categories. Immutable once built, so a single
// instance can be shared across threads.
//
// Validation guarantees: ids are unique and positive, every parent id
// resolves, the parent links form a forest, and at least one topic is not
// sensitive.
class Taxonomy {
 public:
  static absl::StatusOr<Taxonomy> Create(std::string version,
                                         std::vector<Topic> topics);

  const std::string& version() const { return version_; }
  const std::vector<Topic>& topics() const { return topics_; }
  size_t size() const { return topics_.size(); }

  bool Contains(TopicId id) const { return index_.contains(id); }
  // Returns nullptr for unknown ids.
  const Topic* Find(TopicId id) const;
  // Unknown ids are reported as sensitive so they are never emitted.
  bool IsSensitive(TopicId id) const;

  // Ids with sensitive == false, ascending.
  const std::vector<TopicId>& non_sensitive_ids() const {
    return non_sensitive_ids_;
  }

 private:
  Taxonomy() = default;

  std::string version_;
  std::vector<Topic> topics_;
  std::unordered_map<TopicId, size_t> index_;
  std::vector<TopicId> non_sensitive_ids_;
};

// Parses the JSON taxonomy document:
//   {"version": str, "topics": [{"id": int, "label": str,
//                                "parent_id": int|null, "sensitive": bool}]}
// Malformed documents yield InvalidArgument with a "parse error" message;
// structural violations yield InvalidArgument with a "validation error".
absl::StatusOr<Taxonomy> LoadTaxonomy(std::string_view document);

absl::StatusOr<Taxonomy> LoadTaxonomyFile(const std::filesystem::path& path);

std::vector<TopicId> NonSensitiveTopics(const Taxonomy& taxonomy);

}  // namespace topics_sim

#endif  // TOPICS_SIM_TAXONOMY_H_
