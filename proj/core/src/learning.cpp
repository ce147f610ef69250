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

#include "csc/learning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "csc/errors.hpp"

namespace csc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require(bool ok, const std::string& field) {
  if (!ok) throw ConfigError(field);
}

}  // namespace

bool operator==(const RunRecord& a, const RunRecord& b) {
  return a.algorithm == b.algorithm && a.seed == b.seed && a.horizon == b.horizon &&
         a.iterations == b.iterations && a.converged_at == b.converged_at &&
         a.final_profile == b.final_profile && a.moves == b.moves &&
         a.stage_iterations == b.stage_iterations;
}

PayoffNormalizer::PayoffNormalizer(std::vector<PayoffRange> ranges)
    : ranges_(std::move(ranges)) {
  for (const PayoffRange& r : ranges_)
    if (!(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
      throw ConfigError({"payoff_range"}, "payoff range must satisfy lo < hi");
}

PayoffNormalizer PayoffNormalizer::from_game(const Game& game) {
  std::vector<PayoffRange> ranges;
  for (int n = 0; n < game.num_players(); ++n) {
    const auto b = game.payoff_bounds(n);
    if (!b)
      throw ConfigError({"payoff_range"},
                        "player " + std::to_string(n) + " has no payoff bounds");
    ranges.push_back(*b);
  }
  return PayoffNormalizer(std::move(ranges));
}

PayoffNormalizer PayoffNormalizer::identity(int num_players) {
  return PayoffNormalizer(
      std::vector<PayoffRange>(static_cast<std::size_t>(num_players), {0.0, 1.0}));
}

double PayoffNormalizer::operator()(int player, double payoff) const {
  const PayoffRange& r = ranges_.at(static_cast<std::size_t>(player));
  return (payoff - r.lo) / (r.hi - r.lo);
}

// --- SLA ---------------------------------------------------------------------

SlaAutomaton::SlaAutomaton(int num_actions, double step) : step_(step) {
  if (num_actions < 1) throw std::invalid_argument("automaton needs an action");
  if (!(step > 0.0 && step < 1.0)) throw ConfigError("step");
  probs_.assign(static_cast<std::size_t>(num_actions), 1.0 / num_actions);
}

Action SlaAutomaton::choose(Rng& rng) const {
  return static_cast<Action>(rng.categorical(probs_));
}

void SlaAutomaton::reinforce(Action chosen, double reward) {
  if (!(reward >= 0.0 && reward <= 1.0))
    throw ContractViolation("normalized payoff " + std::to_string(reward) +
                            " outside [0, 1]");
  const double g = step_ * reward;
  double sum = 0.0;
  for (std::size_t a = 0; a < probs_.size(); ++a) {
    const double target = static_cast<Action>(a) == chosen ? 1.0 : 0.0;
    probs_[a] += g * (target - probs_[a]);
    if (probs_[a] < 0.0) throw ContractViolation("negative action probability");
    sum += probs_[a];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ContractViolation("action probabilities sum to " + std::to_string(sum));
}

double SlaAutomaton::max_probability() const {
  return *std::max_element(probs_.begin(), probs_.end());
}

RunRecord run_sla(const Game& game, const SlaParams& params, std::uint64_t seed,
                  const PayoffNormalizer& normalizer) {
  require(params.horizon >= 1, "horizon");
  require(params.step > 0.0 && params.step < 1.0, "step");
  require(params.convergence_threshold > 0.0 && params.convergence_threshold <= 1.0,
          "convergence_threshold");
  const int n = game.num_players();
  if (normalizer.num_players() != n)
    throw std::invalid_argument("normalizer does not match the game");

  const auto t0 = Clock::now();
  RunRecord rec;
  rec.algorithm = "sla";
  rec.seed = seed;
  rec.horizon = params.horizon;

  Rng rng(seed);
  std::vector<SlaAutomaton> automata;
  for (int p = 0; p < n; ++p) automata.emplace_back(game.num_actions(p), params.step);

  ActionProfile profile(static_cast<std::size_t>(n));
  std::vector<double> payoffs(static_cast<std::size_t>(n));
  for (int k = 0; k < params.horizon; ++k) {
    for (int p = 0; p < n; ++p)
      profile[static_cast<std::size_t>(p)] = automata[static_cast<std::size_t>(p)].choose(rng);
    game.realize_payoffs(profile, rng, payoffs);
    bool settled = true;
    for (int p = 0; p < n; ++p) {
      auto& automaton = automata[static_cast<std::size_t>(p)];
      automaton.reinforce(profile[static_cast<std::size_t>(p)],
                          normalizer(p, payoffs[static_cast<std::size_t>(p)]));
      settled = settled && automaton.max_probability() >= params.convergence_threshold;
    }
    rec.iterations.push_back({profile, payoffs});
    if (settled) {
      rec.converged_at = k;
      break;
    }
  }
  std::vector<std::vector<double>> probs;
  for (const auto& a : automata) probs.push_back(a.probabilities());
  rec.final_profile = MixedProfile(std::move(probs)).mode();
  rec.wall_clock_s = seconds_since(t0);
  return rec;
}

// --- Best response -------------------------------------------------------------

RunRecord run_best_response(const Game& game, const ActionProfile& start,
                            const BestResponseParams& params, std::uint64_t seed) {
  require(params.horizon >= 1, "horizon");
  require(params.tolerance >= 0.0, "tolerance");
  validate_profile(game, start);
  const int n = game.num_players();
  const bool graphical = game.has_neighbor_sets();

  const auto t0 = Clock::now();
  RunRecord rec;
  rec.algorithm = "best_response";
  rec.seed = seed;
  rec.horizon = params.horizon;

  Rng rng(seed);
  ActionProfile profile = start;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::vector<double> payoffs(static_cast<std::size_t>(n));
  ActionProfile view(static_cast<std::size_t>(n), kUnobserved);

  for (int k = 0; k < params.horizon; ++k) {
    std::iota(order.begin(), order.end(), 0);
    if (params.schedule == Schedule::kRandom) {
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.index(i)]);
    }
    bool moved = false;
    for (int p : order) {
      // The player's view: its own action and its neighbors' actions.
      if (graphical) {
        std::fill(view.begin(), view.end(), kUnobserved);
        view[static_cast<std::size_t>(p)] = profile[static_cast<std::size_t>(p)];
        for (int m : game.neighbors(p))
          view[static_cast<std::size_t>(m)] = profile[static_cast<std::size_t>(m)];
      } else {
        view = profile;
      }
      const double current = game.utility(p, view);
      const Action br = best_response(game, view, p);
      view[static_cast<std::size_t>(p)] = br;
      if (br != profile[static_cast<std::size_t>(p)] &&
          game.utility(p, view) > current + params.tolerance) {
        profile[static_cast<std::size_t>(p)] = br;
        ++rec.moves;
        moved = true;
      }
    }
    game.realize_payoffs(profile, rng, payoffs);
    rec.iterations.push_back({profile, payoffs});
    if (!moved) {
      rec.converged_at = k;
      break;
    }
  }
  rec.final_profile = profile;
  rec.wall_clock_s = seconds_since(t0);
  return rec;
}

// --- Q-learning ----------------------------------------------------------------

double epsilon_at(const QLearningParams& params, int iteration) {
  return params.epsilon0 / (1.0 + iteration / params.tau);
}

QLearner::QLearner(int num_actions, Action initial_greedy)
    : QLearner(std::vector<double>(static_cast<std::size_t>(num_actions), 0.0),
               initial_greedy, 0) {}

QLearner::QLearner(std::vector<double> values, Action greedy, int age)
    : q_(std::move(values)), greedy_(greedy), age_(age) {
  if (q_.empty()) throw std::invalid_argument("learner needs an action");
  if (greedy < 0 || static_cast<std::size_t>(greedy) >= q_.size())
    throw std::invalid_argument("initial greedy action out of range");
}

Action QLearner::choose(double epsilon, Rng& rng) const {
  if (rng.uniform() < epsilon) return static_cast<Action>(rng.index(q_.size()));
  return greedy_;
}

void QLearner::update(Action chosen, double reward, double alpha) {
  double& q = q_.at(static_cast<std::size_t>(chosen));
  q = (1.0 - alpha) * q + alpha * reward;
  ++age_;
  const double best = *std::max_element(q_.begin(), q_.end());
  if (q_[static_cast<std::size_t>(greedy_)] < best)
    greedy_ = static_cast<Action>(std::find(q_.begin(), q_.end(), best) - q_.begin());
}

namespace {

void check(const QLearningParams& params) {
  require(params.horizon >= 1, "horizon");
  require(params.alpha > 0.0 && params.alpha <= 1.0, "alpha");
  require(params.epsilon0 >= 0.0 && params.epsilon0 <= 1.0, "epsilon0");
  require(params.tau > 0.0, "tau");
  require(params.window >= 1, "window");
}

// Runs the given learners (one per player, local action indices) on `game`.
// Each learner's exploration rate follows its own age.
RunRecord run_q(const Game& game, std::vector<QLearner>& learners,
                const QLearningParams& params, std::uint64_t seed,
                const PayoffNormalizer& normalizer) {
  const int n = game.num_players();
  if (normalizer.num_players() != n || static_cast<int>(learners.size()) != n)
    throw std::invalid_argument("learners do not match the game");

  RunRecord rec;
  rec.algorithm = "q_simultaneous";
  rec.seed = seed;
  rec.horizon = params.horizon;

  Rng rng(seed);
  ActionProfile played(static_cast<std::size_t>(n));
  ActionProfile greedy(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p)
    greedy[static_cast<std::size_t>(p)] = learners[static_cast<std::size_t>(p)].greedy();
  std::vector<double> payoffs(static_cast<std::size_t>(n));
  int stable = 0;
  for (int k = 0; k < params.horizon; ++k) {
    for (int p = 0; p < n; ++p) {
      const QLearner& learner = learners[static_cast<std::size_t>(p)];
      played[static_cast<std::size_t>(p)] =
          learner.choose(epsilon_at(params, learner.age()), rng);
    }
    game.realize_payoffs(played, rng, payoffs);
    bool changed = false;
    for (int p = 0; p < n; ++p) {
      auto& learner = learners[static_cast<std::size_t>(p)];
      const double r = normalizer(p, payoffs[static_cast<std::size_t>(p)]);
      if (!std::isfinite(r)) throw ContractViolation("non-finite reward");
      learner.update(played[static_cast<std::size_t>(p)], r, params.alpha);
      if (learner.greedy() != greedy[static_cast<std::size_t>(p)]) {
        greedy[static_cast<std::size_t>(p)] = learner.greedy();
        changed = true;
      }
    }
    stable = changed ? 0 : stable + 1;
    rec.iterations.push_back({played, payoffs});
    if (stable >= params.window) {
      rec.converged_at = k;
      break;
    }
  }
  rec.final_profile = greedy;
  return rec;
}

// A cell's learner over global channel indices, viewed through a stage's
// allowed channel list.
QLearner localize(const QLearner& global, const std::vector<Action>& allowed,
                  Action fallback_greedy) {
  std::vector<double> q;
  Action greedy = fallback_greedy;
  for (std::size_t k = 0; k < allowed.size(); ++k) {
    q.push_back(global.values()[static_cast<std::size_t>(allowed[k])]);
    if (allowed[k] == global.greedy()) greedy = static_cast<Action>(k);
  }
  return QLearner(std::move(q), greedy, global.age());
}

QLearner globalize(const QLearner& local, const std::vector<Action>& allowed,
                   const QLearner& previous) {
  std::vector<double> q = previous.values();
  for (std::size_t k = 0; k < allowed.size(); ++k)
    q[static_cast<std::size_t>(allowed[k])] = local.values()[k];
  return QLearner(std::move(q), allowed[static_cast<std::size_t>(local.greedy())],
                  local.age());
}

}  // namespace

RunRecord run_q_learning_simultaneous(const Game& game, const ActionProfile& start,
                                      const QLearningParams& params,
                                      std::uint64_t seed,
                                      const PayoffNormalizer& normalizer) {
  check(params);
  validate_profile(game, start);
  const auto t0 = Clock::now();
  std::vector<QLearner> learners;
  for (int p = 0; p < game.num_players(); ++p)
    learners.emplace_back(game.num_actions(p), start[static_cast<std::size_t>(p)]);
  RunRecord rec = run_q(game, learners, params, seed, normalizer);
  rec.wall_clock_s = seconds_since(t0);
  return rec;
}

RunRecord run_hierarchical_q(std::shared_ptr<const SpectrumAccessGame> base,
                             const ClusterStructure& clusters,
                             const ActionProfile& start,
                             const QLearningParams& params, std::uint64_t seed) {
  check(params);
  validate_profile(*base, start);
  const auto t0 = Clock::now();
  const std::size_t n = static_cast<std::size_t>(base->num_players());
  const int n_channels = base->num_actions(0);
  std::vector<Action> all_channels(static_cast<std::size_t>(n_channels));
  std::iota(all_channels.begin(), all_channels.end(), 0);

  RunRecord rec;
  rec.algorithm = "q_hierarchical";
  rec.seed = seed;
  rec.horizon = params.horizon;
  bool all_converged = true;
  ActionProfile current = start;
  // Every cell's learner, over global channel indices, carried across stages.
  std::vector<QLearner> state;
  for (std::size_t i = 0; i < n; ++i) state.emplace_back(n_channels, current[i]);

  // Stage 1: headers.
  {
    const StagedPlan plan = build_hierarchical_stages(base, clusters, current);
    const HeaderGame& hg = *plan.header_game;
    std::vector<QLearner> learners;
    for (CellId h : clusters.headers) learners.push_back(state[static_cast<std::size_t>(h)]);
    const RunRecord r = run_q(hg, learners, params, seed, PayoffNormalizer::from_game(hg));
    for (const IterationRecord& it : r.iterations) {
      std::vector<double> payoffs(n, 0.0);
      for (std::size_t k = 0; k < clusters.headers.size(); ++k)
        payoffs[static_cast<std::size_t>(clusters.headers[k])] = it.payoffs[k];
      rec.iterations.push_back({hg.embed(it.profile), std::move(payoffs)});
    }
    for (std::size_t k = 0; k < clusters.headers.size(); ++k)
      state[static_cast<std::size_t>(clusters.headers[k])] = learners[k];
    current = hg.embed(r.final_profile);
    rec.stage_iterations.push_back(r.iterations_run());
    all_converged = all_converged && r.converged();
  }

  // Stage 2: members of every cluster, independently.
  {
    const StagedPlan plan = build_hierarchical_stages(base, clusters, current);
    std::vector<RunRecord> runs;
    int length = 0;
    for (const MemberStage& stage : plan.member_stages) {
      const RestrictedGame& game = *stage.game;
      const ActionProfile local_start = game.project(current);
      std::vector<QLearner> learners;
      for (std::size_t i = 0; i < stage.members.size(); ++i) {
        const auto m = static_cast<std::size_t>(stage.members[i]);
        learners.push_back(localize(state[m], game.allowed_actions(static_cast<int>(i)),
                                    local_start[i]));
      }
      runs.push_back(run_q(game, learners,  params,
                           derive_seed(seed, 0x100u + static_cast<std::uint64_t>(stage.cluster)),
                           PayoffNormalizer::from_game(game)));
      for (std::size_t i = 0; i < stage.members.size(); ++i) {
        const auto m = static_cast<std::size_t>(stage.members[i]);
        state[m] = globalize(learners[i], game.allowed_actions(static_cast<int>(i)), state[m]);
      }
      length = std::max(length, runs.back().iterations_run());
      all_converged = all_converged && runs.back().converged();
    }
    for (int k = 0; k < length; ++k) {
      ActionProfile profile = current;
      std::vector<double> payoffs(n, 0.0);
      for (std::size_t s = 0; s < runs.size(); ++s) {
        const RunRecord& r = runs[s];
        const auto& members = plan.member_stages[s].members;
        const int at = std::min(k, r.iterations_run() - 1);
        const ActionProfile global =
            plan.member_stages[s].game->embed(r.iterations[static_cast<std::size_t>(at)].profile);
        for (std::size_t i = 0; i < members.size(); ++i) {
          const auto m = static_cast<std::size_t>(members[i]);
          profile[m] = global[m];
          if (k < r.iterations_run())
            payoffs[m] = r.iterations[static_cast<std::size_t>(k)].payoffs[i];
        }
      }
      rec.iterations.push_back({std::move(profile), std::move(payoffs)});
    }
    for (std::size_t i = 0; i < n; ++i) current[i] = state[i].greedy();
    rec.stage_iterations.push_back(length);
  }

  // Stage 3: cells of the remaining inter-cluster conflicts keep learning.
  {
    const StagedPlan plan = build_hierarchical_stages(base, clusters, current);
    const std::vector<CellId> cells = plan.conflict_cells();
    int length = 0;
    if (!cells.empty()) {
      const auto cg = conflict_game(base, cells, current);
      std::vector<QLearner> learners;
      for (CellId c : cells) learners.push_back(state[static_cast<std::size_t>(c)]);
      const RunRecord r = run_q(*cg, learners, params, derive_seed(seed, 0x200u),
                                PayoffNormalizer::from_game(*cg));
      for (const IterationRecord& it : r.iterations) {
        std::vector<double> payoffs(n, 0.0);
        for (std::size_t i = 0; i < cells.size(); ++i)
          payoffs[static_cast<std::size_t>(cells[i])] = it.payoffs[i];
        rec.iterations.push_back({cg->embed(it.profile), std::move(payoffs)});
      }
      current = cg->embed(r.final_profile);
      length = r.iterations_run();
      all_converged = all_converged && r.converged();
    }
    rec.stage_iterations.push_back(length);
  }

  if (all_converged) rec.converged_at = rec.iterations_run() - 1;
  rec.final_profile = current;
  rec.wall_clock_s = seconds_since(t0);
  return rec;
}

}  // namespace csc
