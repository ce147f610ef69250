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

// Distributed learning dynamics.
//
// The learners never see the game. Each iteration the environment plays the
// joint profile through Game::realize_payoffs and hands every player its own
// realized payoff, which is all that SLA and Q-learning consume. Best
// response is the partially uncoupled dynamic: it evaluates the player's
// utility on a profile in which only the player and its neighbors are
// observed.

#ifndef CSC_LEARNING_HPP_
#define CSC_LEARNING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csc/game.hpp"
#include "csc/hierarchy.hpp"
#include "csc/random.hpp"

namespace csc {

// Affine map of each player's payoff range onto [0, 1].
class PayoffNormalizer {
 public:
  PayoffNormalizer() = default;
  explicit PayoffNormalizer(std::vector<PayoffRange> ranges);

  // Uses Game::payoff_bounds; throws ConfigError if a player has none.
  static PayoffNormalizer from_game(const Game& game);
  static PayoffNormalizer identity(int num_players);

  double operator()(int player, double payoff) const;
  int num_players() const { return static_cast<int>(ranges_.size()); }

 private:
  std::vector<PayoffRange> ranges_;
};

struct IterationRecord {
  ActionProfile profile;
  std::vector<double> payoffs;
  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  int horizon = 0;
  // One entry per iteration actually run, iteration k at index k.
  std::vector<IterationRecord> iterations;
  // Iteration at which convergence was detected.
  std::optional<int> converged_at;
  ActionProfile final_profile;
  // Unilateral action changes (best response only).
  int moves = 0;
  // Iterations spent in each stage (hierarchical Q-learning only).
  std::vector<int> stage_iterations;
  double wall_clock_s = 0.0;

  int iterations_run() const { return static_cast<int>(iterations.size()); }
  bool converged() const { return converged_at.has_value(); }

  // Ignores the wall clock.
  friend bool operator==(const RunRecord& a, const RunRecord& b);
};

// ---------------------------------------------------------------------------
// Stochastic learning automata (linear reward-inaction).

// One player's automaton. Only sees its own action and realized payoff.
class SlaAutomaton {
 public:
  SlaAutomaton(int num_actions, double step);

  Action choose(Rng& rng) const;
  // p_a += b * r * (1{a == chosen} - p_a). Throws ContractViolation if the
  // reward is outside [0, 1] or the vector leaves the simplex.
  void reinforce(Action chosen, double reward);

  const std::vector<double>& probabilities() const { return probs_; }
  double max_probability() const;

 private:
  double step_;
  std::vector<double> probs_;
};

struct SlaParams {
  int horizon = 2000;
  double step = 0.1;
  double convergence_threshold = 0.99;
};

// The final profile is the mode of the final mixed strategies.
RunRecord run_sla(const Game& game, const SlaParams& params, std::uint64_t seed,
                  const PayoffNormalizer& normalizer);

// ---------------------------------------------------------------------------
// Asynchronous best response.

enum class Schedule { kRoundRobin, kRandom };

struct BestResponseParams {
  // Sweeps; every player gets one chance to move per sweep.
  int horizon = 1000;
  Schedule schedule = Schedule::kRoundRobin;
  // A player moves only for a gain above this.
  double tolerance = kDeterministicNeTolerance;
};

// Iteration k is sweep k. Converged at the first sweep without a move.
RunRecord run_best_response(const Game& game, const ActionProfile& start,
                            const BestResponseParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Stateless epsilon-greedy Q-learning.

struct QLearningParams {
  int horizon = 5000;
  double alpha = 0.5;
  // epsilon_k = epsilon0 / (1 + k / tau)
  double epsilon0 = 0.3;
  double tau = 100.0;
  // Converged once the greedy profile is unchanged for this many iterations.
  int window = 20;
};

double epsilon_at(const QLearningParams& params, int iteration);

// One player's Q-table over its own actions. The greedy action is sticky:
// it changes only when another action's value strictly exceeds it. The
// exploration rate follows the learner's age (number of updates so far).
class QLearner {
 public:
  QLearner(int num_actions, Action initial_greedy);
  QLearner(std::vector<double> values, Action greedy, int age);

  Action choose(double epsilon, Rng& rng) const;
  void update(Action chosen, double reward, double alpha);

  Action greedy() const { return greedy_; }
  int age() const { return age_; }
  const std::vector<double>& values() const { return q_; }

 private:
  std::vector<double> q_;
  Action greedy_;
  int age_ = 0;
};

// All players learn at once from `start` (the initial greedy actions). The
// final profile is the greedy profile.
RunRecord run_q_learning_simultaneous(const Game& game, const ActionProfile& start,
                                      const QLearningParams& params,
                                      std::uint64_t seed,
                                      const PayoffNormalizer& normalizer);

// Staged Q-learning over a clustering of the base game's cells. Stage 1 runs
// on the header game, stage 2 runs each cluster's members independently
// (the stage lasts as long as its slowest cluster), stage 3 runs the cells
// of the remaining inter-cluster conflicts against the full game. Each stage
// has its own horizon. A cell's learner (Q-table and age) carries over when
// it learns again in stage 3. Stage 1 uses `seed` unchanged. The trace
// holds global profiles; a cell's payoff entry is zero in iterations where it
// is not learning (header entries carry the cluster sum in stage 1).
RunRecord run_hierarchical_q(std::shared_ptr<const SpectrumAccessGame> base,
                             const ClusterStructure& clusters,
                             const ActionProfile& start,
                             const QLearningParams& params, std::uint64_t seed);

}  // namespace csc

#endif  // CSC_LEARNING_HPP_
