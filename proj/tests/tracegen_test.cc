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

#include "topics_sim/tracegen.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "topics_sim/classifier.h"

namespace topics_sim {
namespace {

using ::testing::HasSubstr;

constexpr char kConfigJson[] = R"({
  "n_users": 5, "n_sites": 6, "n_callers": 3, "n_epochs": 2,
  "visits_per_user_per_epoch": 4, "noise_rate": 0.1, "interest_skew": 1.5,
  "callers_per_site": 2, "master_seed": 18446744073709551615,
  "taxonomy_path": "tax.json", "keyword_map_path": "/abs/kw.json"})";

TEST(ScenarioConfigTest, ParsesAllFields) {
  auto config = ParseScenarioConfig(kConfigJson, "/base");
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->n_users, 5);
  EXPECT_EQ(config->n_sites, 6);
  EXPECT_EQ(config->visits_per_user_per_epoch, 4);
  EXPECT_DOUBLE_EQ(config->noise_rate, 0.1);
  EXPECT_DOUBLE_EQ(config->interest_skew, 1.5);
  EXPECT_EQ(config->master_seed, 18446744073709551615u);
  EXPECT_EQ(config->ResolvedTaxonomyPath(), "/base/tax.json");
  EXPECT_EQ(config->ResolvedKeywordMapPath(), "/abs/kw.json");
}

TEST(ScenarioConfigTest, NoiseRateDefaults) {
  std::string doc = kConfigJson;
  doc.replace(doc.find("\"noise_rate\": 0.1, "), 19, "");
  auto config = ParseScenarioConfig(doc, "");
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_DOUBLE_EQ(config->noise_rate, 0.05);
}

TEST(ScenarioConfigTest, Errors) {
  const std::pair<std::string, std::string> cases[] = {
      {"\"n_users\": 5", "\"n_users\": 0"},
      {"\"n_users\": 5", "\"n_users\": 1.5"},
      {"\"visits_per_user_per_epoch\": 4", "\"visits_per_user_per_epoch\": 0"},
      {"\"noise_rate\": 0.1", "\"noise_rate\": 1.5"},
      {"\"interest_skew\": 1.5", "\"interest_skew\": 0"},
      {"\"callers_per_site\": 2", "\"callers_per_site\": 4"},
      {"\"n_users\": 5", "\"n_users\": 5, \"extra\": 1"},
      {"\"n_users\": 5,", ""},
      {"\"master_seed\": 18446744073709551615", "\"master_seed\": -1"},
  };
  for (const auto& [from, to] : cases) {
    std::string doc = kConfigJson;
    doc.replace(doc.find(from), from.size(), to);
    auto config = ParseScenarioConfig(doc, "");
    ASSERT_FALSE(config.ok()) << to;
    EXPECT_THAT(config.status().message(), HasSubstr("config error")) << to;
  }
  EXPECT_FALSE(ParseScenarioConfig("[1]", "").ok());
  EXPECT_FALSE(ParseScenarioConfig("{", "").ok());
}

TEST(ScenarioConfigTest, CommandSettings) {
  std::string doc = kConfigJson;
  doc.insert(doc.find('{') + 1, R"("bits": 16, "window": 4,)");
  auto config = ParseScenarioConfig(doc, "");
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->commands.bits, 16);
  EXPECT_EQ(config->commands.window, 4);
  EXPECT_FALSE(config->commands.k_min.has_value());
  EXPECT_THAT(CanonicalConfigJson(*config), HasSubstr("\"bits\":16"));
  EXPECT_THAT(CanonicalConfigJson(*ParseScenarioConfig(kConfigJson, "")),
              ::testing::Not(HasSubstr("bits")));

  for (const char* bad : {R"("bits": 65,)", R"("k_min": 0,)", R"("window": "3",)"}) {
    std::string broken = kConfigJson;
    broken.insert(broken.find('{') + 1, bad);
    EXPECT_FALSE(ParseScenarioConfig(broken, "").ok()) << bad;
  }
}

TEST(ScenarioConfigTest, CanonicalJsonRoundTrips) {
  auto config = ParseScenarioConfig(kConfigJson, "");
  ASSERT_TRUE(config.ok());
  const std::string canonical = CanonicalConfigJson(*config);
  EXPECT_EQ(canonical.find(' '), std::string::npos);
  auto again = ParseScenarioConfig(canonical, "");
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(CanonicalConfigJson(*again), canonical);
}

Population Generate(const ScenarioConfig& config, double correlation = 0.8) {
  auto population = GeneratePopulation(config, testing::ShippedTaxonomy(),
                                       testing::ShippedKeywords(), correlation);
  EXPECT_TRUE(population.ok()) << population.status();
  return population.ok() ? *population : Population{};
}

TEST(GeneratePopulationTest, Structure) {
  const ScenarioConfig config = testing::SmallConfig();
  const Population population = Generate(config);
  ASSERT_EQ(population.users.size(), 20u);
  ASSERT_EQ(population.sites.size(), 40u);
  ASSERT_EQ(population.site_callers.size(), 40u);
  EXPECT_EQ(population.callers, (std::vector<CallerId>{1, 2, 3}));
  const Taxonomy& taxonomy = testing::ShippedTaxonomy();
  for (const UserProfile& user : population.users) {
    double total = 0.0;
    double best = 0.0;
    for (const auto& [topic, weight] : user.interest_weights) {
      EXPECT_FALSE(taxonomy.IsSensitive(topic));
      total += weight;
      best = std::max(best, weight);
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_TRUE(std::is_sorted(user.interest_weights.begin(),
                               user.interest_weights.end()));
    const auto top = std::max_element(
        user.interest_weights.begin(), user.interest_weights.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    EXPECT_EQ(top->first, user.top_interest);
    EXPECT_TRUE(user.attribute == 0 || user.attribute == 1);
  }
  for (size_t i = 0; i < population.sites.size(); ++i) {
    const Site& site = population.sites[i];
    EXPECT_EQ(site.site_id, static_cast<SiteId>(i + 1));
    EXPECT_TRUE(ValidateSite(site, taxonomy).ok()) << site.hostname;
    EXPECT_GE(site.true_topics.size(), 1u);
    EXPECT_LE(site.true_topics.size(), 3u);
    const auto& callers = population.site_callers[i];
    EXPECT_EQ(callers.size(), 2u);
    EXPECT_TRUE(std::is_sorted(callers.begin(), callers.end()));
    EXPECT_EQ(std::set<CallerId>(callers.begin(), callers.end()).size(), 2u);
  }
}

TEST(GeneratePopulationTest, UndeclaredSitesClassifyFromHostname) {
  ScenarioConfig config = testing::SmallConfig();
  config.n_sites = 400;
  const Population population = Generate(config);
  int declared = 0;
  for (const Site& site : population.sites) {
    if (site.declared_topics.has_value()) {
      ++declared;
      continue;
    }
    // Hostname tokens come from the keyword map, so every non-sensitive true
    // topic is recovered.
    std::vector<TopicId> expected;
    for (TopicId t : site.true_topics) {
      if (!testing::ShippedTaxonomy().IsSensitive(t)) expected.push_back(t);
    }
    EXPECT_EQ(ClassifySite(site, testing::ShippedTaxonomy(),
                           testing::ShippedKeywords()),
              expected)
        << site.hostname;
  }
  EXPECT_NEAR(declared / 400.0, kDeclaredSiteFraction, 0.07);
}

TEST(GeneratePopulationTest, Deterministic) {
  const ScenarioConfig config = testing::SmallConfig();
  const Population a = Generate(config);
  const Population b = Generate(config);
  ASSERT_EQ(a.users.size(), b.users.size());
  for (size_t i = 0; i < a.users.size(); ++i) {
    EXPECT_EQ(a.users[i].interest_weights, b.users[i].interest_weights);
    EXPECT_EQ(a.users[i].attribute, b.users[i].attribute);
  }
  EXPECT_EQ(a.site_callers, b.site_callers);
  EXPECT_EQ(GenerateVisits(a, config), GenerateVisits(b, config));
}

TEST(GeneratePopulationTest, HighSkewConcentratesInterest) {
  ScenarioConfig config = testing::SmallConfig();
  config.n_users = 1000;
  config.interest_skew = 8.0;
  const Population population = Generate(config);
  int concentrated = 0;
  for (const UserProfile& user : population.users) {
    double best = 0.0;
    for (const auto& [topic, weight] : user.interest_weights) {
      best = std::max(best, weight);
    }
    if (best > 0.9) ++concentrated;
  }
  EXPECT_GT(concentrated, 900);
}

TEST(GeneratePopulationTest, AttributeCorrelation) {
  ScenarioConfig config = testing::SmallConfig();
  config.n_users = 2000;
  for (double correlation : {0.0, 0.5, 0.8, 1.0}) {
    const Population population = Generate(config, correlation);
    int agree = 0;
    for (const UserProfile& user : population.users) {
      if (user.attribute == (user.top_interest % 2 == 0 ? 1 : 0)) ++agree;
    }
    EXPECT_NEAR(agree / 2000.0, correlation, 0.04) << correlation;
  }
  EXPECT_FALSE(GeneratePopulation(config, testing::ShippedTaxonomy(),
                                  testing::ShippedKeywords(), 1.5)
                   .ok());
}

TEST(GenerateVisitsTest, CountsAndOrder) {
  ScenarioConfig config = testing::SmallConfig();
  config.n_users = 1;
  config.n_epochs = 2;
  config.visits_per_user_per_epoch = 3;
  const Population population = Generate(config);
  const std::vector<VisitEvent> events = GenerateVisits(population, config);
  ASSERT_EQ(events.size(), 6u);
  std::vector<Epoch> epochs;
  for (const VisitEvent& event : events) epochs.push_back(event.epoch);
  EXPECT_EQ(epochs, (std::vector<Epoch>{0, 0, 0, 1, 1, 1}));
}

TEST(GenerateVisitsTest, CallersFollowSite) {
  const ScenarioConfig config = testing::SmallConfig();
  const Population population = Generate(config);
  const std::vector<VisitEvent> events = GenerateVisits(population, config);
  EXPECT_EQ(events.size(), 20u * 4u * 10u);
  for (size_t i = 0; i < events.size(); ++i) {
    const VisitEvent& event = events[i];
    EXPECT_EQ(event.callers_present,
              population.site_callers[static_cast<size_t>(event.site_id - 1)]);
    if (i > 0) {
      const VisitEvent& prev = events[i - 1];
      EXPECT_LE(std::pair(prev.epoch, prev.user_id),
                std::pair(event.epoch, event.user_id));
    }
  }
}

TEST(GenerateVisitsTest, SingleSiteGetsEveryVisit) {
  ScenarioConfig config = testing::SmallConfig();
  config.n_sites = 1;
  config.callers_per_site = 1;
  const Population population = Generate(config);
  for (const VisitEvent& event : GenerateVisits(population, config)) {
    EXPECT_EQ(event.site_id, 1);
  }
}

// Oracle: a user whose whole interest sits on topic 1 picks the one site
// carrying it with probability 1.01 / (1.01 + 4 * 0.01) ~= 0.96.
TEST(GenerateVisitsTest, ProportionalToInterest) {
  ScenarioConfig config = testing::SmallConfig();
  config.n_users = 1;
  config.n_epochs = 1;
  config.visits_per_user_per_epoch = 1000;
  Population population;
  population.users.push_back(UserProfile{
      .user_id = 1, .interest_weights = {{1, 1.0}}, .top_interest = 1});
  for (SiteId s = 1; s <= 5; ++s) {
    population.sites.push_back(Site{.site_id = s,
                                    .hostname = "h" + std::to_string(s),
                                    .true_topics = {s == 3 ? 1 : 10 + s}});
    population.site_callers.push_back({});
  }
  int hits = 0;
  for (const VisitEvent& event : GenerateVisits(population, config)) {
    if (event.site_id == 3) ++hits;
  }
  EXPECT_GE(hits, 900);
}

}  // namespace
}  // namespace topics_sim
