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

#ifndef CSC_SPECTRUM_GAME_HPP_
#define CSC_SPECTRUM_GAME_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "csc/game.hpp"
#include "csc/net_model.hpp"
#include "csc/utility.hpp"

namespace csc {

// Expectations over co-channel activity are enumerated exactly up to this
// many uncertain interferers and estimated by Monte Carlo beyond it.
inline constexpr int kExactExpectationLimit = 20;

struct SpectrumAccessGameSpec {
  std::shared_ptr<const NetworkTopology> topo;
  SatisfactionKind satisfaction_kind = SatisfactionKind::kNone;
  // One class per cell; may be empty when satisfaction_kind is kNone.
  std::vector<TrafficClass> traffic;
  // Utility is the expectation over random active cell sets.
  bool robust = false;
  PropagationParams propagation;
  // Per-cell subset of neighbors whose interference is counted. Unset means
  // every neighbor.
  std::optional<std::vector<std::vector<CellId>>> interference_scope;
  int monte_carlo_samples = 4096;
  std::uint64_t monte_carlo_seed = 0;
};

struct UtilityEstimate {
  double value = 0.0;
  // Zero when the expectation was enumerated exactly.
  double standard_error = 0.0;
};

// Distributed channel selection: one player per cell, actions are channel
// indices. A cell's rate is the Shannon rate of its SINR against active
// co-channel neighbors; its utility is the satisfaction of that rate (or the
// rate itself), and in robust mode the expectation of that quantity over the
// cells' independent activity. An inactive cell earns zero.
class SpectrumAccessGame final : public Game {
 public:
  explicit SpectrumAccessGame(SpectrumAccessGameSpec spec);

  int num_players() const override { return static_cast<int>(signal_mw_.size()); }
  int num_actions(int) const override { return n_channels_; }
  double utility(int player, const ActionProfile& profile) const override;
  bool has_neighbor_sets() const override { return true; }
  std::span<const int> neighbors(int player) const override {
    return scope_.at(static_cast<std::size_t>(player));
  }
  void realize_payoffs(const ActionProfile& profile, Rng& rng,
                       std::span<double> out) const override;
  std::optional<PayoffRange> payoff_bounds(int player) const override;

  UtilityEstimate expected_utility(int player, const ActionProfile& profile) const;

  // Rate of `player` when exactly the cells in `active` transmit.
  double rate(int player, const ActionProfile& profile,
              const ActiveSet& active) const;
  // Rates with every cell active.
  std::vector<double> rates(const ActionProfile& profile) const;
  // Interference-free rate on the widest channel.
  double max_rate(int player) const;
  // Rate on the narrowest channel with every counted neighbor co-channel.
  double min_rate(int player) const;

  const SpectrumAccessGameSpec& spec() const { return spec_; }
  const NetworkTopology& topology() const { return *spec_.topo; }

 private:
  struct Interferer {
    CellId cell;
    double power_mw;
  };

  double payoff_of_rate(int player, double rate) const;
  double rate_from_interference(int player, Action channel,
                                double interference_mw) const;

  SpectrumAccessGameSpec spec_;
  int n_channels_;
  double noise_mw_;
  std::vector<double> bandwidth_;
  std::vector<double> signal_mw_;
  std::vector<std::vector<int>> scope_;
  std::vector<std::vector<Interferer>> interferers_;
};

std::shared_ptr<const SpectrumAccessGame> build_spectrum_game(
    SpectrumAccessGameSpec spec);

}  // namespace csc

#endif  // CSC_SPECTRUM_GAME_HPP_
