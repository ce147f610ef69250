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
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "csc/errors.hpp"

namespace csc {

void Game::realize_payoffs(const ActionProfile& profile, Rng& /*rng*/,
                           std::span<double> out) const {
  for (int n = 0; n < num_players(); ++n)
    out[static_cast<std::size_t>(n)] = utility(n, profile);
}

void validate_profile(const Game& game, const ActionProfile& profile) {
  if (static_cast<int>(profile.size()) != game.num_players())
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " entries for " +
                                std::to_string(game.num_players()) + " players");
  for (int n = 0; n < game.num_players(); ++n) {
    const Action a = profile[static_cast<std::size_t>(n)];
    if (a < 0 || a >= game.num_actions(n))
      throw std::invalid_argument("player " + std::to_string(n) +
                                  " action out of range");
  }
}

double state_space_size(const Game& game) {
  double size = 1.0;
  for (int n = 0; n < game.num_players(); ++n) size *= game.num_actions(n);
  return size;
}

namespace {

void check_cap(const Game& game, double cap) {
  const double size = state_space_size(game);
  if (size > cap) throw CapacityError(size, cap);
}

// Profile at lexicographic rank `index` (player 0 most significant).
ActionProfile decode(const Game& game, std::uint64_t index) {
  ActionProfile p(static_cast<std::size_t>(game.num_players()), 0);
  for (int n = game.num_players() - 1; n >= 0; --n) {
    const auto k = static_cast<std::uint64_t>(game.num_actions(n));
    p[static_cast<std::size_t>(n)] = static_cast<Action>(index % k);
    index /= k;
  }
  return p;
}

// Advances to the next profile; returns false after the last one.
bool increment(const Game& game, ActionProfile& p) {
  for (int n = game.num_players() - 1; n >= 0; --n) {
    auto& a = p[static_cast<std::size_t>(n)];
    if (++a < game.num_actions(n)) return true;
    a = 0;
  }
  return false;
}

// Runs `body(begin, end, out)` over `workers` contiguous slices of the
// profile space and concatenates the per-slice outputs in order.
template <typename T, typename Body>
std::vector<T> partitioned(const Game& game, int workers, Body body) {
  const auto total = static_cast<std::uint64_t>(state_space_size(game));
  const auto w = static_cast<std::uint64_t>(std::max(1, workers));
  std::vector<std::vector<T>> parts(w);
  auto run = [&](std::uint64_t k) {
    const std::uint64_t begin = total * k / w;
    const std::uint64_t end = total * (k + 1) / w;
    if (begin < end) body(begin, end, parts[k]);
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::uint64_t k = 0; k < w; ++k) threads.emplace_back(run, k);
    for (auto& t : threads) t.join();
  }
  std::vector<T> out;
  for (auto& part : parts)
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  return out;
}

}  // namespace

void for_each_profile(const Game& game,
                      const std::function<bool(const ActionProfile&)>& fn) {
  for (int n = 0; n < game.num_players(); ++n)
    if (game.num_actions(n) < 1) return;
  ActionProfile p(static_cast<std::size_t>(game.num_players()), 0);
  do {
    if (!fn(p)) return;
  } while (increment(game, p));
}

MixedProfile::MixedProfile(std::vector<std::vector<double>> probs)
    : probs_(std::move(probs)) {
  validate();
}

MixedProfile MixedProfile::uniform(const Game& game) {
  std::vector<std::vector<double>> probs;
  for (int n = 0; n < game.num_players(); ++n) {
    const int k = game.num_actions(n);
    probs.emplace_back(static_cast<std::size_t>(k), 1.0 / k);
  }
  return MixedProfile(std::move(probs));
}

void MixedProfile::validate(double tolerance) const {
  for (std::size_t n = 0; n < probs_.size(); ++n) {
    const auto& p = probs_[n];
    if (p.empty())
      throw ContractViolation("player " + std::to_string(n) + " has no actions");
    double sum = 0.0;
    for (double x : p) {
      if (!(x >= 0.0))
        throw ContractViolation("negative probability for player " +
                                std::to_string(n));
      sum += x;
    }
    if (std::abs(sum - 1.0) > tolerance)
      throw ContractViolation("probabilities of player " + std::to_string(n) +
                              " sum to " + std::to_string(sum));
  }
}

ActionProfile MixedProfile::mode() const {
  ActionProfile out;
  out.reserve(probs_.size());
  for (const auto& p : probs_)
    out.push_back(static_cast<Action>(std::max_element(p.begin(), p.end()) -
                                      p.begin()));
  return out;
}

Action best_response(const Game& game, const ActionProfile& profile, int player,
                     TieBreak tie_break) {
  ActionProfile p = profile;
  const int k = game.num_actions(player);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Action> ties;
  for (Action a = 0; a < k; ++a) {
    p[static_cast<std::size_t>(player)] = a;
    const double u = game.utility(player, p);
    if (u > best) {
      best = u;
      ties.assign(1, a);
    } else if (u == best) {
      ties.push_back(a);
    }
  }
  if (ties.empty()) return profile[static_cast<std::size_t>(player)];
  if (tie_break.rule == TieBreak::Rule::kRandom && ties.size() > 1) {
    if (tie_break.rng == nullptr)
      throw std::invalid_argument("random tie-break needs a generator");
    return ties[tie_break.rng->index(ties.size())];
  }
  return ties.front();
}

bool is_pure_ne(const Game& game, const ActionProfile& profile,
                double tolerance) {
  ActionProfile p = profile;
  for (int n = 0; n < game.num_players(); ++n) {
    const auto idx = static_cast<std::size_t>(n);
    const Action current = profile[idx];
    const double u0 = game.utility(n, profile);
    for (Action a = 0; a < game.num_actions(n); ++a) {
      if (a == current) continue;
      p[idx] = a;
      const bool gains = game.utility(n, p) > u0 + tolerance;
      if (gains) return false;
    }
    p[idx] = current;
  }
  return true;
}

std::vector<ActionProfile> enumerate_pure_ne(const Game& game,
                                             const EnumerationOptions& options) {
  check_cap(game, options.cap);
  return partitioned<ActionProfile>(
      game, options.workers,
      [&](std::uint64_t begin, std::uint64_t end,
          std::vector<ActionProfile>& out) {
        ActionProfile p = decode(game, begin);
        for (std::uint64_t i = begin; i < end; ++i) {
          if (is_pure_ne(game, p, options.tolerance)) out.push_back(p);
          increment(game, p);
        }
      });
}

Welfare welfare_sum() {
  return [](std::span<const double> u) {
    return std::accumulate(u.begin(), u.end(), 0.0);
  };
}

Welfare welfare_min() {
  return [](std::span<const double> u) {
    return u.empty() ? 0.0 : *std::min_element(u.begin(), u.end());
  };
}

double evaluate_welfare(const Game& game, const ActionProfile& profile,
                        const Welfare& welfare) {
  std::vector<double> u(static_cast<std::size_t>(game.num_players()));
  for (int n = 0; n < game.num_players(); ++n)
    u[static_cast<std::size_t>(n)] = game.utility(n, profile);
  return welfare(u);
}

OptimumResult exhaustive_optimum(const Game& game, const Welfare& welfare,
                                 const EnumerationOptions& options) {
  check_cap(game, options.cap);
  auto partial = partitioned<OptimumResult>(
      game, options.workers,
      [&](std::uint64_t begin, std::uint64_t end,
          std::vector<OptimumResult>& out) {
        OptimumResult best{{}, -std::numeric_limits<double>::infinity()};
        ActionProfile p = decode(game, begin);
        for (std::uint64_t i = begin; i < end; ++i) {
          const double w = evaluate_welfare(game, p, welfare);
          if (w > best.welfare) best = {p, w};
          increment(game, p);
        }
        out.push_back(std::move(best));
      });
  OptimumResult best = partial.front();
  for (const auto& r : partial)
    if (r.welfare > best.welfare) best = r;
  return best;
}

namespace {

struct CycleTerms {
  double gap;
  bool improvement;
};

CycleTerms cycle_terms(const Game& game, ActionProfile a, int i, int j,
                       Action xi, Action yj, double tolerance) {
  const auto ii = static_cast<std::size_t>(i);
  const auto jj = static_cast<std::size_t>(j);
  ActionProfile b = a;
  b[ii] = xi;
  ActionProfile c = b;
  c[jj] = yj;
  ActionProfile d = a;
  d[jj] = yj;
  const double d1 = game.utility(i, b) - game.utility(i, a);
  const double d2 = game.utility(j, c) - game.utility(j, b);
  const double d3 = game.utility(i, d) - game.utility(i, c);
  const double d4 = game.utility(j, a) - game.utility(j, d);
  const bool forward = d1 > tolerance && d2 > tolerance && d3 > tolerance &&
                       d4 > tolerance;
  const bool backward = d1 < -tolerance && d2 < -tolerance &&
                        d3 < -tolerance && d4 < -tolerance;
  return {d1 + d2 + d3 + d4, forward || backward};
}

void record(PotentialReport& report, const CycleTerms& t, double tolerance) {
  ++report.trials;
  const double gap = std::abs(t.gap);
  if (gap > tolerance) ++report.violations;
  report.max_gap = std::max(report.max_gap, gap);
  if (t.improvement) ++report.improvement_cycles;
}

}  // namespace

PotentialReport verify_potential_cycles(const Game& game, int trials, Rng& rng,
                                        double tolerance) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<int> eligible;
  for (int n = 0; n < game.num_players(); ++n)
    if (game.num_actions(n) >= 2) eligible.push_back(n);

  // Utilities of non-adjacent players do not interact, so their cycles are
  // trivially balanced; graphical games sample interacting pairs only.
  std::vector<std::pair<int, int>> pairs;
  if (game.has_neighbor_sets()) {
    for (std::size_t x = 0; x < eligible.size(); ++x)
      for (std::size_t y = x + 1; y < eligible.size(); ++y) {
        const auto nb = game.neighbors(eligible[x]);
        if (std::find(nb.begin(), nb.end(), eligible[y]) != nb.end())
          pairs.emplace_back(eligible[x], eligible[y]);
      }
  }
  if (pairs.empty()) {
    for (std::size_t x = 0; x < eligible.size(); ++x)
      for (std::size_t y = x + 1; y < eligible.size(); ++y)
        pairs.emplace_back(eligible[x], eligible[y]);
  }

  PotentialReport report;
  if (pairs.empty()) return report;
  ActionProfile a(static_cast<std::size_t>(game.num_players()));
  for (int t = 0; t < trials; ++t) {
    for (int n = 0; n < game.num_players(); ++n)
      a[static_cast<std::size_t>(n)] =
          static_cast<Action>(rng.index(static_cast<std::uint64_t>(game.num_actions(n))));
    auto [i, j] = pairs[rng.index(pairs.size())];
    if (rng.bernoulli(0.5)) std::swap(i, j);
    const Action xi = a[static_cast<std::size_t>(i)];
    const Action yj = a[static_cast<std::size_t>(j)];
    // Uniform over the other actions.
    Action xi2 = static_cast<Action>(
        rng.index(static_cast<std::uint64_t>(game.num_actions(i) - 1)));
    if (xi2 >= xi) ++xi2;
    Action yj2 = static_cast<Action>(
        rng.index(static_cast<std::uint64_t>(game.num_actions(j) - 1)));
    if (yj2 >= yj) ++yj2;
    record(report, cycle_terms(game, a, i, j, xi2, yj2, tolerance), tolerance);
  }
  return report;
}

PotentialReport verify_potential_exhaustive(const Game& game, double tolerance,
                                            double cap) {
  check_cap(game, cap);
  PotentialReport report;
  for_each_profile(game, [&](const ActionProfile& a) {
    for (int i = 0; i < game.num_players(); ++i)
      for (int j = i + 1; j < game.num_players(); ++j)
        for (Action x = 0; x < game.num_actions(i); ++x) {
          if (x == a[static_cast<std::size_t>(i)]) continue;
          for (Action y = 0; y < game.num_actions(j); ++y) {
            if (y == a[static_cast<std::size_t>(j)]) continue;
            record(report, cycle_terms(game, a, i, j, x, y, tolerance),
                   tolerance);
          }
        }
    return true;
  });
  return report;
}

FunctionGame::FunctionGame(std::vector<int> action_counts, UtilityFn fn,
                           std::optional<std::vector<std::vector<int>>> neighbor_sets)
    : action_counts_(std::move(action_counts)),
      fn_(std::move(fn)),
      neighbors_(std::move(neighbor_sets)) {
  for (int k : action_counts_)
    if (k < 1) throw std::invalid_argument("every player needs an action");
  if (neighbors_ && neighbors_->size() != action_counts_.size())
    throw std::invalid_argument("neighbor sets do not match player count");
}

std::span<const int> FunctionGame::neighbors(int player) const {
  if (!neighbors_) return {};
  return neighbors_->at(static_cast<std::size_t>(player));
}

RestrictedGame::RestrictedGame(GamePtr base, std::vector<int> free_players,
                               ActionProfile fixed_profile,
                               std::vector<std::vector<Action>> allowed_actions)
    : base_(std::move(base)),
      free_players_(std::move(free_players)),
      fixed_(std::move(fixed_profile)),
      allowed_(std::move(allowed_actions)) {
  validate_profile(*base_, fixed_);
  if (allowed_.size() != free_players_.size())
    throw std::invalid_argument("allowed action lists do not match free players");
  for (std::size_t i = 0; i < free_players_.size(); ++i) {
    const int p = free_players_[i];
    if (p < 0 || p >= base_->num_players())
      throw std::invalid_argument("free player out of range");
    if (allowed_[i].empty())
      throw std::invalid_argument("free player without allowed actions");
    for (Action a : allowed_[i])
      if (a < 0 || a >= base_->num_actions(p))
        throw std::invalid_argument("allowed action out of range");
  }
}

ActionProfile RestrictedGame::embed(const ActionProfile& local) const {
  ActionProfile global = fixed_;
  for (std::size_t i = 0; i < free_players_.size(); ++i)
    global[static_cast<std::size_t>(free_players_[i])] =
        allowed_[i][static_cast<std::size_t>(local[i])];
  return global;
}

ActionProfile RestrictedGame::project(const ActionProfile& global) const {
  ActionProfile local(free_players_.size(), 0);
  for (std::size_t i = 0; i < free_players_.size(); ++i) {
    const Action a = global[static_cast<std::size_t>(free_players_[i])];
    const auto it = std::find(allowed_[i].begin(), allowed_[i].end(), a);
    local[i] = it == allowed_[i].end()
                   ? 0
                   : static_cast<Action>(it - allowed_[i].begin());
  }
  return local;
}

double RestrictedGame::utility(int player, const ActionProfile& profile) const {
  return base_->utility(free_players_.at(static_cast<std::size_t>(player)),
                        embed(profile));
}

void RestrictedGame::realize_payoffs(const ActionProfile& profile, Rng& rng,
                                     std::span<double> out) const {
  std::vector<double> all(static_cast<std::size_t>(base_->num_players()));
  base_->realize_payoffs(embed(profile), rng, all);
  for (std::size_t i = 0; i < free_players_.size(); ++i)
    out[i] = all[static_cast<std::size_t>(free_players_[i])];
}

std::optional<PayoffRange> RestrictedGame::payoff_bounds(int player) const {
  return base_->payoff_bounds(free_players_.at(static_cast<std::size_t>(player)));
}

}  // namespace csc
