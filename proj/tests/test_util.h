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

#ifndef TOPICS_SIM_TESTS_TEST_UTIL_H_
#define TOPICS_SIM_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "topics_sim/classifier.h"
#include "topics_sim/taxonomy.h"
#include "topics_sim/tracegen.h"

namespace topics_sim::testing {

inline std::filesystem::path DataDir() { return TOPICS_SIM_DATA_DIR; }

inline const Taxonomy& ShippedTaxonomy() {
  static const Taxonomy* taxonomy = [] {
    auto loaded = LoadTaxonomyFile(DataDir() / "taxonomy.json");
    if (!loaded.ok()) std::abort();
    return new Taxonomy(std::move(*loaded));
  }();
  return *taxonomy;
}

inline const KeywordMap& ShippedKeywords() {
  static const KeywordMap* keywords = [] {
    auto loaded =
        LoadKeywordMapFile(DataDir() / "keyword_map.json", ShippedTaxonomy());
    if (!loaded.ok()) std::abort();
    return new KeywordMap(std::move(*loaded));
  }();
  return *keywords;
}

// Topics 1..n, all non-sensitive except the ids in `sensitive`.
inline Taxonomy FlatTaxonomy(int n, const std::vector<TopicId>& sensitive = {}) {
  std::vector<Topic> topics;
  for (int id = 1; id <= n; ++id) {
    const bool flagged =
        std::find(sensitive.begin(), sensitive.end(), id) != sensitive.end();
    topics.push_back(
        Topic{.id = id, .label = "t" + std::to_string(id), .sensitive = flagged});
  }
  auto taxonomy = Taxonomy::Create("test", std::move(topics));
  if (!taxonomy.ok()) std::abort();
  return std::move(*taxonomy);
}

inline ScenarioConfig SmallConfig() {
  ScenarioConfig config;
  config.n_users = 20;
  config.n_sites = 40;
  config.n_callers = 3;
  config.n_epochs = 4;
  config.visits_per_user_per_epoch = 10;
  config.noise_rate = 0.05;
  config.interest_skew = 2.0;
  config.callers_per_site = 2;
  config.master_seed = 7;
  config.taxonomy_path = (DataDir() / "taxonomy.json").string();
  config.keyword_map_path = (DataDir() / "keyword_map.json").string();
  return config;
}

// Fresh, empty directory under the system temp dir, unique per test.
inline std::filesystem::path TempDir(const std::string& tag = "") {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("topics_sim_" + std::string(info->test_suite_name()) +
                               "_" + info->name() + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace topics_sim::testing

#endif  // TOPICS_SIM_TESTS_TEST_UTIL_H_
