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

#include "topics_sim/engine.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace topics_sim {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

constexpr uint64_t kSeed = 2024;
constexpr CallerId kCallerA = 1;
constexpr CallerId kCallerB = 2;

class EngineTest : public ::testing::Test {
 protected:
  explicit EngineTest(double noise_rate = 0.0)
      : taxonomy_(testing::FlatTaxonomy(40, {39, 40})),
        engine_(taxonomy_, noise_rate) {
    for (UserId user = 1; user <= 3; ++user) {
      EXPECT_TRUE(engine_.AddUser(user, 1000 + user).ok());
    }
    for (SiteId site = 1; site <= 100000; ++site) {
      EXPECT_TRUE(engine_.AddSite(site).ok());
    }
    EXPECT_TRUE(engine_.RegisterCaller(kCallerA).ok());
    EXPECT_TRUE(engine_.RegisterCaller(kCallerB).ok());
  }

  void Visit(UserId user, SiteId site, Epoch epoch, std::vector<TopicId> topics,
             std::vector<CallerId> callers = {kCallerA}) {
    ASSERT_TRUE(engine_
                    .RecordVisit(VisitEvent{.user_id = user,
                                            .site_id = site,
                                            .epoch = epoch,
                                            .callers_present = std::move(callers)},
                                 topics)
                    .ok());
  }

  std::vector<TopicId> Finalize(UserId user, Epoch epoch) {
    auto top = engine_.FinalizeEpoch(user, epoch);
    EXPECT_TRUE(top.ok()) << top.status();
    return top.ok() ? *top : std::vector<TopicId>{};
  }

  TopicsResponse Query(UserId user, SiteId site, CallerId caller, Epoch epoch,
                       uint64_t seed = kSeed) {
    auto response = engine_.BrowsingTopics(user, site, caller, epoch, seed);
    EXPECT_TRUE(response.ok()) << response.status();
    return response.ok() ? *response : TopicsResponse{};
  }

  Taxonomy taxonomy_;
  TopicsEngine engine_;
};

class NoisyEngineTest : public EngineTest {
 protected:
  NoisyEngineTest() : EngineTest(kDefaultNoiseRate) {}
};

TEST_F(EngineTest, RecordVisitCountsAndObserves) {
  Visit(1, 1, 0, {3});
  EXPECT_EQ(engine_.FindUser(1)->counters.at(0).at(3), 1);
  EXPECT_THAT(engine_.ObservedTopics(kCallerA, 1, 0), ElementsAre(3));
  EXPECT_THAT(engine_.ObservedTopics(kCallerB, 1, 0), IsEmpty());
}

TEST_F(EngineTest, EmptyTopicsChangeNothing) {
  Visit(1, 1, 0, {});
  EXPECT_TRUE(engine_.FindUser(1)->counters.empty());
  EXPECT_THAT(engine_.ObservedTopics(kCallerA, 1, 0), IsEmpty());
}

TEST_F(EngineTest, CountsAccumulateWithinEpoch) {
  Visit(1, 1, 0, {1});
  Visit(1, 2, 0, {1});
  Visit(1, 3, 0, {2});
  const auto& counts = engine_.FindUser(1)->counters.at(0);
  EXPECT_EQ(counts, (std::map<TopicId, int64_t>{{1, 2}, {2, 1}}));
}

TEST_F(EngineTest, RecordVisitErrors) {
  EXPECT_TRUE(absl::IsNotFound(engine_.RecordVisit(
      VisitEvent{.user_id = 9, .site_id = 1, .epoch = 0, .callers_present = {}},
      std::vector<TopicId>{1})));
  EXPECT_TRUE(absl::IsNotFound(engine_.RecordVisit(
      VisitEvent{.user_id = 1, .site_id = 0, .epoch = 0, .callers_present = {}},
      std::vector<TopicId>{1})));
  EXPECT_TRUE(absl::IsNotFound(engine_.RecordVisit(
      VisitEvent{.user_id = 1, .site_id = 1, .epoch = 0, .callers_present = {7}},
      std::vector<TopicId>{1})));
  Visit(1, 1, 3, {1});
  EXPECT_TRUE(absl::IsFailedPrecondition(engine_.RecordVisit(
      VisitEvent{.user_id = 1, .site_id = 1, .epoch = 2, .callers_present = {}},
      std::vector<TopicId>{1})));
}

TEST_F(EngineTest, FinalizeBreaksTiesByAscendingId) {
  for (int i = 0; i < 5; ++i) Visit(1, 1, 0, {1, 2});
  Visit(1, 1, 0, {3});
  EXPECT_THAT(Finalize(1, 0), ElementsAre(1, 2, 3));
}

TEST_F(EngineTest, FinalizeWithoutVisitsIsEmpty) {
  EXPECT_THAT(Finalize(1, 0), IsEmpty());
}

TEST_F(EngineTest, FinalizeTruncatesToFive) {
  Visit(1, 1, 0, {16, 15, 14, 13, 12, 11, 10});
  EXPECT_THAT(Finalize(1, 0), ElementsAre(10, 11, 12, 13, 14));
}

TEST_F(EngineTest, FinalizeSkipsSensitiveAndDeleted) {
  ASSERT_TRUE(engine_.UserDeleteTopic(1, 2).ok());
  for (int i = 0; i < 3; ++i) Visit(1, 1, 0, {39, 2});
  Visit(1, 1, 0, {5});
  EXPECT_THAT(Finalize(1, 0), ElementsAre(5));
}

TEST_F(EngineTest, FinalizePurgesOldState) {
  for (Epoch e = 0; e <= 5; ++e) {
    Visit(1, 1, e, {1});
    Finalize(1, e);
  }
  const UserState* user = engine_.FindUser(1);
  EXPECT_EQ(user->counters.begin()->first, 2);
  EXPECT_EQ(user->top_lists.begin()->first, 3);
  EXPECT_THAT(engine_.ObservedTopics(kCallerA, 1, 2), IsEmpty());
  EXPECT_THAT(engine_.ObservedTopics(kCallerA, 1, 3), ElementsAre(1));
}

TEST_F(EngineTest, OptOutGetsEmptyResponse) {
  Visit(1, 1, 0, {4});
  Finalize(1, 0);
  ASSERT_TRUE(engine_.SetOptOut(1, true).ok());
  EXPECT_THAT(Query(1, 1, kCallerA, 1).entries, IsEmpty());
  ASSERT_TRUE(engine_.SetOptOut(1, false).ok());
  EXPECT_THAT(Query(1, 1, kCallerA, 1).entries,
              ElementsAre(TopicsEntry{.epoch = 0, .topic = 4, .noise = false}));
}

TEST_F(EngineTest, SingleObservedCandidate) {
  Visit(1, 1, 4, {4});
  Finalize(1, 4);
  Finalize(1, 5);
  Finalize(1, 6);
  EXPECT_THAT(Query(1, 1, kCallerA, 7).entries,
              ElementsAre(TopicsEntry{.epoch = 4, .topic = 4, .noise = false}));
  Finalize(1, 7);
  EXPECT_THAT(Query(1, 1, kCallerA, 8).entries, IsEmpty());
}

TEST_F(EngineTest, SingleCandidateAtMostRecentEpoch) {
  Finalize(1, 0);
  Finalize(1, 1);
  Visit(1, 1, 2, {4});
  Finalize(1, 2);
  EXPECT_THAT(Query(1, 1, kCallerA, 3).entries,
              ElementsAre(TopicsEntry{.epoch = 2, .topic = 4, .noise = false}));
}

TEST_F(EngineTest, UnobservedTopicsAreWithheld) {
  for (Epoch e = 0; e < 3; ++e) {
    Visit(1, 1, e, {1, 2, 3}, {kCallerB});
    Finalize(1, e);
  }
  for (SiteId site = 1; site <= 50; ++site) {
    EXPECT_THAT(Query(1, site, kCallerA, 3).entries, IsEmpty());
    EXPECT_FALSE(Query(1, site, kCallerB, 3).entries.empty());
  }
}

TEST_F(EngineTest, UnknownCallerAndUser) {
  EXPECT_TRUE(absl::IsNotFound(
      engine_.BrowsingTopics(1, 1, 77, 1, kSeed).status()));
  EXPECT_TRUE(absl::IsNotFound(
      engine_.BrowsingTopics(77, 1, kCallerA, 1, kSeed).status()));
  EXPECT_TRUE(absl::IsNotFound(engine_.UserViewTopics(77).status()));
  EXPECT_TRUE(absl::IsNotFound(engine_.UserDeleteTopic(77, 1)));
  EXPECT_TRUE(absl::IsNotFound(engine_.SetOptOut(77, true)));
}

TEST_F(EngineTest, UserView) {
  EXPECT_THAT(*engine_.UserViewTopics(1), IsEmpty());
  Visit(1, 1, 9, {1, 2});
  Finalize(1, 9);
  EXPECT_EQ(*engine_.UserViewTopics(1),
            (std::map<Epoch, std::vector<TopicId>>{{9, {1, 2}}}));
}

TEST_F(EngineTest, UserViewRetainsThreeEpochs) {
  for (Epoch e = 1; e <= 5; ++e) {
    Visit(2, 1, e, {e});
    Finalize(2, e);
  }
  auto view = engine_.UserViewTopics(2);
  ASSERT_TRUE(view.ok());
  std::vector<Epoch> epochs;
  for (const auto& [epoch, top] : *view) epochs.push_back(epoch);
  EXPECT_THAT(epochs, ElementsAre(3, 4, 5));
}

TEST_F(EngineTest, DeleteRemovesFromTopLists) {
  for (int i = 0; i < 2; ++i) Visit(1, 1, 0, {4});
  Visit(1, 1, 0, {7});
  EXPECT_THAT(Finalize(1, 0), ElementsAre(4, 7));
  ASSERT_TRUE(engine_.UserDeleteTopic(1, 4).ok());
  EXPECT_THAT(engine_.UserViewTopics(1)->at(0), ElementsAre(7));
}

TEST_F(EngineTest, DeleteAbsentTopicOnlyGrowsDeletedSet) {
  Visit(1, 1, 0, {4, 7});
  Finalize(1, 0);
  const auto before = *engine_.UserViewTopics(1);
  ASSERT_TRUE(engine_.UserDeleteTopic(1, 30).ok());
  EXPECT_EQ(*engine_.UserViewTopics(1), before);
  EXPECT_THAT(engine_.FindUser(1)->deleted_topics, ElementsAre(30));
}

TEST_F(EngineTest, DeletedTopicNeverReturned) {
  for (Epoch e = 0; e < 3; ++e) {
    Visit(1, 1, e, {4, 5, 6});
    Finalize(1, e);
  }
  ASSERT_TRUE(engine_.UserDeleteTopic(1, 4).ok());
  for (Epoch e = 3; e < 5; ++e) {
    Visit(1, 1, e, {4, 5, 6});
    Finalize(1, e);
  }
  for (SiteId site = 1; site <= 1000; ++site) {
    for (const TopicsEntry& entry : Query(1, site, kCallerA, 5).entries) {
      ASSERT_NE(entry.topic, 4);
    }
  }
}

TEST_F(EngineTest, AllTopicsDeletedMeansEmptyResponse) {
  Visit(1, 1, 0, {4});
  Finalize(1, 0);
  ASSERT_TRUE(engine_.UserDeleteTopic(1, 4).ok());
  for (SiteId site = 1; site <= 200; ++site) {
    EXPECT_THAT(Query(1, site, kCallerA, 1).entries, IsEmpty());
  }
}

TEST_F(EngineTest, OptOutStillCountsButDoesNotObserve) {
  Visit(1, 1, 0, {1});
  ASSERT_TRUE(engine_.SetOptOut(1, true).ok());
  Visit(1, 1, 0, {1, 2});
  ASSERT_TRUE(engine_.SetOptOut(1, false).ok());
  Visit(1, 1, 0, {2});

  Visit(2, 1, 0, {1});
  Visit(2, 1, 0, {1, 2});
  Visit(2, 1, 0, {2});

  EXPECT_EQ(engine_.FindUser(1)->counters, engine_.FindUser(2)->counters);
  EXPECT_EQ(Finalize(1, 0), Finalize(2, 0));
  EXPECT_EQ(*engine_.UserViewTopics(1), *engine_.UserViewTopics(2));
}

TEST_F(EngineTest, SelectionIsUniformOverTopFive) {
  Visit(1, 1, 0, {1, 2, 3, 4, 5});
  Finalize(1, 0);
  constexpr int kQueries = 50000;
  std::map<TopicId, int> hits;
  for (SiteId site = 1; site <= kQueries; ++site) {
    const TopicsResponse response = Query(1, site, kCallerA, 1);
    ASSERT_EQ(response.entries.size(), 1u);
    ++hits[response.entries[0].topic];
  }
  ASSERT_EQ(hits.size(), 5u);
  for (const auto& [topic, count] : hits) {
    EXPECT_NEAR(static_cast<double>(count) / kQueries, 0.2, 0.02) << topic;
  }
}

TEST_F(EngineTest, SelectionIgnoresCaller) {
  for (Epoch e = 0; e < 3; ++e) {
    Visit(1, 1, e, {1, 2, 3, 4, 5}, {kCallerA, kCallerB});
    Finalize(1, e);
  }
  for (SiteId site = 1; site <= 200; ++site) {
    EXPECT_EQ(Query(1, site, kCallerA, 3), Query(1, site, kCallerB, 3));
  }
}

// Oracle: count ground-truth noise flags over disjoint per-epoch top lists
// that the caller has fully observed.
TEST_F(NoisyEngineTest, NoiseFractionNearFivePercent) {
  for (Epoch e = 0; e < 3; ++e) {
    std::vector<TopicId> topics;
    for (TopicId t = 1 + 5 * e; t <= 5 + 5 * e; ++t) topics.push_back(t);
    Visit(1, 1, e, topics);
    Finalize(1, e);
  }
  int64_t entries = 0;
  int64_t noisy = 0;
  for (SiteId site = 1; entries < 100000; ++site) {
    for (const TopicsEntry& entry : Query(1, site, kCallerA, 3).entries) {
      ++entries;
      if (entry.noise) ++noisy;
    }
  }
  const double fraction = static_cast<double>(noisy) / static_cast<double>(entries);
  EXPECT_GE(fraction, 0.044);
  EXPECT_LE(fraction, 0.056);
}

TEST_F(EngineTest, NoiseIsUnconditional) {
  TopicsEngine always_noisy(taxonomy_, 1.0);
  ASSERT_TRUE(always_noisy.AddUser(1, 1).ok());
  ASSERT_TRUE(always_noisy.AddSite(1).ok());
  ASSERT_TRUE(always_noisy.RegisterCaller(kCallerA).ok());
  for (Epoch e = 0; e < 3; ++e) {
    ASSERT_TRUE(always_noisy
                    .RecordVisit(VisitEvent{.user_id = 1,
                                            .site_id = 1,
                                            .epoch = e,
                                            .callers_present = {}},
                                 std::vector<TopicId>{1})
                    .ok());
    ASSERT_TRUE(always_noisy.FinalizeEpoch(1, e).ok());
  }
  EXPECT_THAT(always_noisy.ObservedTopics(kCallerA, 1, 2), IsEmpty());
  auto response = always_noisy.BrowsingTopics(1, 1, kCallerA, 3, kSeed);
  ASSERT_TRUE(response.ok());
  ASSERT_FALSE(response->entries.empty());
  for (const TopicsEntry& entry : response->entries) {
    EXPECT_TRUE(entry.noise);
    EXPECT_FALSE(taxonomy_.IsSensitive(entry.topic));
  }
}

// Random traces: retention, stickiness, observation filter, sensitivity and
// cardinality hold for every response.
TEST(EnginePropertyTest, ResponseInvariants) {
  const Taxonomy taxonomy = testing::FlatTaxonomy(25, {3, 11});
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    TopicsEngine engine(taxonomy, round % 2 == 0 ? 0.05 : 0.4);
    for (UserId u = 1; u <= 4; ++u) ASSERT_TRUE(engine.AddUser(u, u).ok());
    for (SiteId s = 1; s <= 30; ++s) ASSERT_TRUE(engine.AddSite(s).ok());
    for (CallerId c = 1; c <= 3; ++c) ASSERT_TRUE(engine.RegisterCaller(c).ok());
    for (Epoch e = 0; e < 6; ++e) {
      for (int v = 0; v < 40; ++v) {
        const UserId user = 1 + rng() % 4;
        const SiteId site = 1 + rng() % 30;
        std::vector<TopicId> topics;
        for (int k = rng() % 4; k > 0; --k) topics.push_back(1 + rng() % 25);
        std::sort(topics.begin(), topics.end());
        topics.erase(std::unique(topics.begin(), topics.end()), topics.end());
        std::vector<CallerId> callers;
        for (CallerId c = 1; c <= 3; ++c) {
          if (rng() % 2) callers.push_back(c);
        }
        ASSERT_TRUE(engine
                        .RecordVisit(VisitEvent{.user_id = user,
                                                .site_id = site,
                                                .epoch = e,
                                                .callers_present = callers},
                                     topics)
                        .ok());
        for (CallerId caller : callers) {
          auto response = engine.BrowsingTopics(user, site, caller, e, 77 + round);
          ASSERT_TRUE(response.ok());
          ASSERT_LE(response->entries.size(), 3u);
          std::set<TopicId> distinct;
          for (const TopicsEntry& entry : response->entries) {
            EXPECT_GE(entry.epoch, e - kRetainedEpochs);
            EXPECT_LT(entry.epoch, e);
            EXPECT_FALSE(taxonomy.IsSensitive(entry.topic));
            EXPECT_TRUE(distinct.insert(entry.topic).second);
            if (!entry.noise) {
              EXPECT_TRUE(engine.ObservedTopics(caller, user, entry.epoch)
                              .contains(entry.topic));
            }
          }
          EXPECT_EQ(*response,
                    *engine.BrowsingTopics(user, site, caller, e, 77 + round));
        }
      }
      for (UserId u = 1; u <= 4; ++u) ASSERT_TRUE(engine.FinalizeEpoch(u, e).ok());
    }
  }
}

}  // namespace
}  // namespace topics_sim
