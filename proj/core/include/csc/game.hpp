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

// Finite-game machinery shared by every concrete game: profiles, the utility
// oracle interface, pure Nash equilibrium checks and enumeration, exhaustive
// welfare optimization and the exact-potential cycle test.

#ifndef CSC_GAME_HPP_
#define CSC_GAME_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "csc/random.hpp"

namespace csc {

using Action = int;
using ActionProfile = std::vector<Action>;

// Placeholder for an action a player is not allowed to observe.
inline constexpr Action kUnobserved = -1;

inline constexpr double kDeterministicNeTolerance = 1e-9;
inline constexpr double kExpectationNeTolerance = 1e-6;
inline constexpr double kDefaultStateSpaceCap = 1e7;

struct PayoffRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Abstract finite game. Implementations are immutable after construction and
// safe to evaluate concurrently.
class Game {
 public:
  virtual ~Game() = default;

  virtual int num_players() const = 0;
  virtual int num_actions(int player) const = 0;
  virtual double utility(int player, const ActionProfile& profile) const = 0;

  // Graphical games declare whose actions each player's utility may depend
  // on. Entries of a profile outside a player's closed neighborhood may be
  // kUnobserved when its utility is evaluated.
  virtual bool has_neighbor_sets() const { return false; }
  virtual std::span<const int> neighbors(int /*player*/) const { return {}; }

  // Realized (possibly random) payoffs of one play of `profile`, written to
  // `out` (one entry per player). The expectation of the realized payoff is
  // the utility. The default is the deterministic utility.
  virtual void realize_payoffs(const ActionProfile& profile, Rng& rng,
                               std::span<double> out) const;

  // Bounds of the player's payoff, if known statically.
  virtual std::optional<PayoffRange> payoff_bounds(int /*player*/) const {
    return std::nullopt;
  }
};

using GamePtr = std::shared_ptr<const Game>;

// Throws std::invalid_argument if the profile does not fit the game.
void validate_profile(const Game& game, const ActionProfile& profile);

// Product of the action-set sizes, as a double to avoid overflow.
double state_space_size(const Game& game);

// Calls `fn(profile)` for every joint profile in lexicographic order
// (player 0 most significant). Stops early if `fn` returns false.
void for_each_profile(const Game& game,
                      const std::function<bool(const ActionProfile&)>& fn);

// Per-player probability vectors over actions.
class MixedProfile {
 public:
  MixedProfile() = default;
  explicit MixedProfile(std::vector<std::vector<double>> probs);
  static MixedProfile uniform(const Game& game);

  int num_players() const { return static_cast<int>(probs_.size()); }
  std::span<const double> operator[](int player) const {
    return probs_[static_cast<std::size_t>(player)];
  }
  std::vector<double>& mutable_player(int player) {
    return probs_[static_cast<std::size_t>(player)];
  }
  // Throws ContractViolation if any vector is negative or does not sum to 1
  // within `tolerance`.
  void validate(double tolerance = 1e-9) const;
  // Most likely action per player (lowest index on ties).
  ActionProfile mode() const;

  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;

 private:
  std::vector<std::vector<double>> probs_;
};

struct TieBreak {
  enum class Rule { kLowestIndex, kRandom };
  Rule rule = Rule::kLowestIndex;
  Rng* rng = nullptr;  // required for kRandom

  static TieBreak lowest_index() { return {}; }
  static TieBreak random(Rng& r) { return {Rule::kRandom, &r}; }
};

// Action maximizing the player's utility with everyone else fixed.
Action best_response(const Game& game, const ActionProfile& profile, int player,
                     TieBreak tie_break = {});

// True iff no player gains more than `tolerance` by a unilateral deviation.
bool is_pure_ne(const Game& game, const ActionProfile& profile,
                double tolerance = kDeterministicNeTolerance);

struct EnumerationOptions {
  double tolerance = kDeterministicNeTolerance;
  double cap = kDefaultStateSpaceCap;
  // Contiguous partitions of the profile space; the result does not depend
  // on the worker count.
  int workers = 1;
};

// All pure NE in lexicographic order. Throws CapacityError above the cap.
std::vector<ActionProfile> enumerate_pure_ne(const Game& game,
                                             const EnumerationOptions& options = {});

// Aggregates a vector of per-player utilities into a welfare value.
using Welfare = std::function<double(std::span<const double>)>;
Welfare welfare_sum();
Welfare welfare_min();

double evaluate_welfare(const Game& game, const ActionProfile& profile,
                        const Welfare& welfare);

struct OptimumResult {
  ActionProfile profile;
  double welfare = 0.0;
};

// Welfare-maximizing profile (first in lexicographic order on ties).
OptimumResult exhaustive_optimum(const Game& game, const Welfare& welfare,
                                 const EnumerationOptions& options = {});

struct PotentialReport {
  int trials = 0;
  int violations = 0;
  double max_gap = 0.0;
  // Sampled cycles in which every one of the four unilateral moves strictly
  // improved the mover (these rule out even an ordinal potential).
  int improvement_cycles = 0;
};

// Samples 4-cycles of unilateral deviations by two players,
// a -> b -> c -> d -> a, and checks that the deviators' utility changes sum
// to zero (the exact-potential condition). Games with fewer than two
// players having two or more actions have no such cycles; the report then
// has trials == 0.
PotentialReport verify_potential_cycles(const Game& game, int trials, Rng& rng,
                                        double tolerance);

// Same test over every 4-cycle of the game (tiny games only).
PotentialReport verify_potential_exhaustive(const Game& game, double tolerance,
                                            double cap = 1e6);

// Game defined by a callable, for ad-hoc and test games.
class FunctionGame final : public Game {
 public:
  using UtilityFn = std::function<double(int, const ActionProfile&)>;

  FunctionGame(std::vector<int> action_counts, UtilityFn fn,
               std::optional<std::vector<std::vector<int>>> neighbor_sets = {});

  int num_players() const override {
    return static_cast<int>(action_counts_.size());
  }
  int num_actions(int player) const override {
    return action_counts_.at(static_cast<std::size_t>(player));
  }
  double utility(int player, const ActionProfile& profile) const override {
    return fn_(player, profile);
  }
  bool has_neighbor_sets() const override { return neighbors_.has_value(); }
  std::span<const int> neighbors(int player) const override;

 private:
  std::vector<int> action_counts_;
  UtilityFn fn_;
  std::optional<std::vector<std::vector<int>>> neighbors_;
};

// A base game with some players frozen at a fixed profile and the remaining
// ("free") players restricted to a subset of their actions. Local action k
// of free player i maps to allowed_actions[i][k] in the base game.
class RestrictedGame final : public Game {
 public:
  RestrictedGame(GamePtr base, std::vector<int> free_players,
                 ActionProfile fixed_profile,
                 std::vector<std::vector<Action>> allowed_actions);

  int num_players() const override {
    return static_cast<int>(free_players_.size());
  }
  int num_actions(int player) const override {
    return static_cast<int>(allowed_.at(static_cast<std::size_t>(player)).size());
  }
  double utility(int player, const ActionProfile& profile) const override;
  void realize_payoffs(const ActionProfile& profile, Rng& rng,
                       std::span<double> out) const override;
  std::optional<PayoffRange> payoff_bounds(int player) const override;

  // Base-game profile with the free players set from a local profile.
  ActionProfile embed(const ActionProfile& local) const;
  // Local profile of the free players read from a base-game profile; an
  // action outside the allowed set maps to local action 0.
  ActionProfile project(const ActionProfile& global) const;

  const std::vector<int>& free_players() const { return free_players_; }
  const std::vector<Action>& allowed_actions(int player) const {
    return allowed_.at(static_cast<std::size_t>(player));
  }
  const Game& base() const { return *base_; }

 private:
  GamePtr base_;
  std::vector<int> free_players_;
  ActionProfile fixed_;
  std::vector<std::vector<Action>> allowed_;
};

}  // namespace csc

#endif  // CSC_GAME_HPP_
