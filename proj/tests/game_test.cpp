// Copyright 2026 The csc Authors
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

#include "csc/game.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "csc/errors.hpp"
#include "csc/random.hpp"
#include "test_util.hpp"

namespace csc {
namespace {

// Random payoff table game.
FunctionGame random_game(std::vector<int> counts, std::uint64_t seed) {
  auto table = std::make_shared<std::vector<double>>();
  double size = 1;
  for (int c : counts) size *= c;
  Rng rng(seed);
  const std::size_t n = counts.size();
  for (std::size_t k = 0; k < static_cast<std::size_t>(size) * n; ++k)
    table->push_back(std::floor(rng.uniform(0.0, 10.0)));  // ties on purpose
  return FunctionGame(counts, [table, counts, n](int p, const ActionProfile& a) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(counts[i]) + static_cast<std::size_t>(a[i]);
    return (*table)[idx * n + static_cast<std::size_t>(p)];
  });
}

TEST(BestResponse, SingleActionPlayer) {
  const FunctionGame g({1, 3}, [](int, const ActionProfile& a) { return a[1]; });
  EXPECT_EQ(best_response(g, {0, 2}, 0), 0);
}

TEST(BestResponse, PicksChannelUnusedByOpponent) {
  const auto g = testing::anti_coordination(2);
  EXPECT_EQ(best_response(g, {0, 0}, 1), 1);
  EXPECT_EQ(best_response(g, {1, 1}, 0), 0);
}

TEST(BestResponse, LowestIndexTieBreak) {
  const auto g = testing::anti_coordination(3);
  EXPECT_EQ(best_response(g, {0, 0}, 1), 1);
  EXPECT_EQ(best_response(g, {2, 2}, 1), 0);
}

TEST(BestResponse, RandomTieBreakChoosesAmongMaximizers) {
  const auto g = testing::anti_coordination(3);
  Rng rng(4);
  std::set<Action> seen;
  for (int k = 0; k < 200; ++k) seen.insert(best_response(g, {0, 0}, 1, TieBreak::random(rng)));
  EXPECT_EQ(seen, (std::set<Action>{1, 2}));
}

TEST(BestResponse, MatchesExhaustiveScanOnRandom3x3) {
  for (std::uint64_t s = 1; s <= 200; ++s) {
    const auto g = random_game({3, 3, 3}, s);
    for (const auto& p : testing::all_profiles(g)) {
      for (int i = 0; i < 3; ++i) {
        ActionProfile q = p;
        Action best = 0;
        double bu = -1;
        for (int a = 0; a < 3; ++a) {
          q[static_cast<std::size_t>(i)] = a;
          if (g.utility(i, q) > bu) {
            bu = g.utility(i, q);
            best = a;
          }
        }
        const Action br = best_response(g, p, i);
        ASSERT_EQ(br, best);
        // never worse than the current action
        q[static_cast<std::size_t>(i)] = br;
        EXPECT_GE(g.utility(i, q), g.utility(i, p));
      }
    }
  }
}

TEST(IsPureNe, SingleActionPlayersAlwaysNe) {
  const FunctionGame g({1, 1, 1}, [](int p, const ActionProfile&) { return p; });
  EXPECT_TRUE(is_pure_ne(g, {0, 0, 0}));
}

TEST(IsPureNe, AntiCoordination) {
  const auto g = testing::anti_coordination(2);
  EXPECT_TRUE(is_pure_ne(g, {0, 1}));
  EXPECT_FALSE(is_pure_ne(g, {1, 1}));
}

TEST(IsPureNe, AgreesWithDeviationEnumeration) {
  for (std::uint64_t s = 1; s <= 300; ++s) {
    const auto g = random_game({2, 3, 2}, s);
    const auto ne = testing::brute_force_ne(g);
    for (const auto& p : testing::all_profiles(g))
      EXPECT_EQ(is_pure_ne(g, p), std::find(ne.begin(), ne.end(), p) != ne.end());
  }
}

TEST(EnumeratePureNe, AntiCoordinationExact) {
  const auto ne = enumerate_pure_ne(testing::anti_coordination(2));
  EXPECT_EQ(ne, (std::vector<ActionProfile>{{0, 1}, {1, 0}}));
}

TEST(EnumeratePureNe, PotentialGameNonEmpty) {
  // Congestion game over 3 resources: exact potential.
  const FunctionGame g({3, 3, 3, 3}, [](int p, const ActionProfile& a) {
    int load = 0;
    for (Action x : a) load += x == a[static_cast<std::size_t>(p)];
    return -static_cast<double>(load) * (1 + a[static_cast<std::size_t>(p)]);
  });
  Rng rng(1);
  EXPECT_EQ(verify_potential_cycles(g, 2000, rng, 1e-9).violations, 0);
  EXPECT_EQ(verify_potential_exhaustive(g, 1e-9).violations, 0);
  EXPECT_FALSE(enumerate_pure_ne(g).empty());
}

TEST(EnumeratePureNe, MatchesDoubleLoopChecker) {
  for (std::uint64_t s = 1; s <= 300; ++s) {
    const auto g = random_game({2, 2, 2}, s);
    EXPECT_EQ(enumerate_pure_ne(g), testing::brute_force_ne(g)) << "seed " << s;
  }
}

TEST(EnumeratePureNe, IndependentOfWorkerCount) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto g = random_game({3, 4, 2, 3}, s);
    const auto one = enumerate_pure_ne(g, {kDeterministicNeTolerance, 1e7, 1});
    for (int w : {2, 3, 7}) EXPECT_EQ(enumerate_pure_ne(g, {kDeterministicNeTolerance, 1e7, w}), one);
  }
}

TEST(EnumeratePureNe, CapExceededNamesSize) {
  const FunctionGame g(std::vector<int>(10, 10), [](int, const ActionProfile&) { return 0.0; });
  try {
    enumerate_pure_ne(g);
    FAIL();
  } catch (const CapacityError& e) {
    EXPECT_DOUBLE_EQ(e.state_space_size(), 1e10);
  }
  EXPECT_THROW(exhaustive_optimum(g, welfare_sum()), CapacityError);
}

TEST(ExhaustiveOptimum, SinglePlayer) {
  const FunctionGame g({4}, [](int, const ActionProfile& a) { return a[0] == 2 ? 5.0 : 1.0; });
  const auto r = exhaustive_optimum(g, welfare_sum());
  EXPECT_EQ(r.profile, ActionProfile{2});
  EXPECT_DOUBLE_EQ(r.welfare, 5.0);
}

TEST(ExhaustiveOptimum, AntiCoordination) {
  const auto g = testing::anti_coordination(2);
  const auto r = exhaustive_optimum(g, welfare_sum());
  EXPECT_NE(r.profile[0], r.profile[1]);
  EXPECT_DOUBLE_EQ(r.welfare, 2.0);
  EXPECT_DOUBLE_EQ(exhaustive_optimum(g, welfare_min()).welfare, 1.0);
}

TEST(ExhaustiveOptimum, DominatesEveryNe) {
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const auto g = random_game({3, 2, 3}, s);
    const double opt = exhaustive_optimum(g, welfare_sum()).welfare;
    for (const auto& p : enumerate_pure_ne(g))
      EXPECT_LE(evaluate_welfare(g, p, welfare_sum()), opt);
  }
}

TEST(PotentialCycles, SharedGlobalFunctionHasNoViolations) {
  const FunctionGame g({3, 3, 2}, [](int, const ActionProfile& a) {
    return std::sin(a[0] + 2.0 * a[1]) * (1 + a[2]);
  });
  Rng rng(9);
  const auto r = verify_potential_cycles(g, 5000, rng, 1e-12);
  EXPECT_EQ(r.trials, 5000);
  EXPECT_EQ(r.violations, 0);
}

TEST(PotentialCycles, MatchingPenniesViolates) {
  // Zero-sum: player 0 wants to match.
  const FunctionGame g({2, 2}, [](int p, const ActionProfile& a) {
    const double m = a[0] == a[1] ? 1.0 : -1.0;
    return p == 0 ? m : -m;
  });
  // Hand computation of the cycle (0,0)->(1,0)->(1,1)->(0,1)->(0,0):
  // deltas -2, -2, -2, -2 for the movers, sum -8.
  Rng rng(2);
  const auto r = verify_potential_cycles(g, 100, rng, 1e-9);
  EXPECT_EQ(r.violations, r.trials);
  EXPECT_GT(r.violations, 0);
  EXPECT_DOUBLE_EQ(r.max_gap, 8.0);
  EXPECT_GT(r.improvement_cycles, 0);
  EXPECT_GT(verify_potential_exhaustive(g, 1e-9).violations, 0);
}

TEST(PotentialCycles, NoCyclesWithoutTwoMultiActionPlayers) {
  const FunctionGame g({1, 3}, [](int, const ActionProfile& a) { return a[1]; });
  Rng rng(2);
  EXPECT_EQ(verify_potential_cycles(g, 10, rng, 1e-9).trials, 0);
}

TEST(MixedProfile, ValidateAndMode) {
  MixedProfile m({{0.2, 0.8}, {0.5, 0.5, 0.0}});
  EXPECT_NO_THROW(m.validate());
  EXPECT_EQ(m.mode(), (ActionProfile{1, 0}));
  EXPECT_THROW(MixedProfile({{0.7, 0.7}}).validate(), ContractViolation);
  EXPECT_THROW(MixedProfile({{1.1, -0.1}}).validate(), ContractViolation);
  const auto u = MixedProfile::uniform(testing::anti_coordination(4));
  EXPECT_DOUBLE_EQ(u[1][3], 0.25);
}

TEST(Profiles, ValidateAndStateSpace) {
  const auto g = testing::anti_coordination(3);
  EXPECT_DOUBLE_EQ(state_space_size(g), 9.0);
  EXPECT_THROW(validate_profile(g, {0}), std::invalid_argument);
  EXPECT_THROW(validate_profile(g, {0, 3}), std::invalid_argument);
  int count = 0;
  for_each_profile(g, [&](const ActionProfile&) { return ++count < 4; });
  EXPECT_EQ(count, 4);
}

TEST(RestrictedGame, EmbedProjectAndUtility) {
  auto base = std::make_shared<const FunctionGame>(testing::anti_coordination(3));
  const RestrictedGame r(base, {1}, {2, 0}, {{0, 2}});
  EXPECT_EQ(r.num_players(), 1);
  EXPECT_EQ(r.num_actions(0), 2);
  EXPECT_EQ(r.embed({1}), (ActionProfile{2, 2}));
  EXPECT_EQ(r.project({2, 2}), ActionProfile{1});
  EXPECT_DOUBLE_EQ(r.utility(0, {0}), 1.0);
  EXPECT_DOUBLE_EQ(r.utility(0, {1}), 0.0);
}

}  // namespace
}  // namespace csc
