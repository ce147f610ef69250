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

#include "csc/spectrum_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csc/errors.hpp"

namespace csc {
namespace {

struct Uncertain {
  double power_mw;
  double prob;
};

// Sum over the 2^k activity patterns of `items`, skipping zero-probability
// branches.
template <typename F>
double enumerate_activity(const std::vector<Uncertain>& items, std::size_t i,
                          double interference, double prob, const F& payoff) {
  if (prob == 0.0) return 0.0;
  if (i == items.size()) return prob * payoff(interference);
  const Uncertain& u = items[i];
  return enumerate_activity(items, i + 1, interference + u.power_mw,
                            prob * u.prob, payoff) +
         enumerate_activity(items, i + 1, interference, prob * (1.0 - u.prob),
                            payoff);
}

}  // namespace

SpectrumAccessGame::SpectrumAccessGame(SpectrumAccessGameSpec spec)
    : spec_(std::move(spec)) {
  if (!spec_.topo) throw ConfigError("topo");
  const NetworkTopology& topo = *spec_.topo;
  const std::size_t n = topo.size();
  if (spec_.satisfaction_kind != SatisfactionKind::kNone) {
    if (spec_.traffic.size() != n)
      throw ConfigError({"traffic"}, "spectrum game needs one traffic class per cell (got " +
                                         std::to_string(spec_.traffic.size()) +
                                         " for " + std::to_string(n) + " cells)");
    for (std::size_t i = 0; i < n; ++i)
      validate(spec_.traffic[i], "traffic[" + std::to_string(i) + "]");
  }
  if (spec_.monte_carlo_samples < 2) throw ConfigError("monte_carlo_samples");

  n_channels_ = static_cast<int>(topo.channels().size());
  noise_mw_ = dbm_to_mw(spec_.propagation.noise_dbm);
  for (const Channel& ch : topo.channels()) bandwidth_.push_back(ch.bandwidth_hz);

  scope_.resize(n);
  interferers_.resize(n);
  signal_mw_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<CellId>(i);
    const Cell& c = topo.cell(id);
    signal_mw_[i] = dbm_to_mw(received_power_dbm(
        c.tx_power_dbm, spec_.propagation.serving_distance_m,
        spec_.propagation.pathloss_exponent));
    std::vector<CellId> scope = topo.neighbors(id);
    if (spec_.interference_scope) {
      if (spec_.interference_scope->size() != n)
        throw ConfigError("interference_scope");
      std::vector<CellId> s = (*spec_.interference_scope)[i];
      std::sort(s.begin(), s.end());
      for (CellId m : s)
        if (!topo.adjacent(id, m))
          throw ConfigError({"interference_scope"},
                            "interference scope must be a subset of the neighbors");
      scope = std::move(s);
    }
    for (CellId m : scope) {
      interferers_[i].push_back(Interferer{
          m, dbm_to_mw(received_power_dbm(topo.cell(m).tx_power_dbm,
                                          topo.distance(id, m),
                                          spec_.propagation.pathloss_exponent))});
    }
    scope_[i] = std::move(scope);
  }
}

double SpectrumAccessGame::rate_from_interference(int player, Action channel,
                                                  double interference_mw) const {
  const auto i = static_cast<std::size_t>(player);
  return shannon_rate(bandwidth_[static_cast<std::size_t>(channel)],
                      signal_mw_[i] / (noise_mw_ + interference_mw));
}

double SpectrumAccessGame::payoff_of_rate(int player, double rate) const {
  if (spec_.satisfaction_kind == SatisfactionKind::kNone) return rate;
  return satisfaction(spec_.satisfaction_kind, rate,
                      spec_.traffic[static_cast<std::size_t>(player)]);
}

double SpectrumAccessGame::rate(int player, const ActionProfile& profile,
                                const ActiveSet& active) const {
  const auto i = static_cast<std::size_t>(player);
  const Action ch = profile.at(i);
  double interference = 0.0;
  for (const Interferer& m : interferers_[i]) {
    if (profile[static_cast<std::size_t>(m.cell)] == ch && active.contains(m.cell))
      interference += m.power_mw;
  }
  return rate_from_interference(player, ch, interference);
}

std::vector<double> SpectrumAccessGame::rates(const ActionProfile& profile) const {
  const ActiveSet all(signal_mw_.size(), true);
  std::vector<double> out(signal_mw_.size());
  for (int n = 0; n < num_players(); ++n)
    out[static_cast<std::size_t>(n)] = rate(n, profile, all);
  return out;
}

double SpectrumAccessGame::max_rate(int player) const {
  const double widest = *std::max_element(bandwidth_.begin(), bandwidth_.end());
  return shannon_rate(widest,
                      signal_mw_.at(static_cast<std::size_t>(player)) / noise_mw_);
}

double SpectrumAccessGame::min_rate(int player) const {
  const auto i = static_cast<std::size_t>(player);
  double interference = 0.0;
  for (const Interferer& m : interferers_[i]) interference += m.power_mw;
  const double narrowest = *std::min_element(bandwidth_.begin(), bandwidth_.end());
  return shannon_rate(narrowest, signal_mw_[i] / (noise_mw_ + interference));
}

UtilityEstimate SpectrumAccessGame::expected_utility(
    int player, const ActionProfile& profile) const {
  const auto i = static_cast<std::size_t>(player);
  const Action ch = profile.at(i);
  const NetworkTopology& topo = *spec_.topo;

  double certain = 0.0;
  std::vector<Uncertain> uncertain;
  std::vector<CellId> uncertain_ids;
  for (const Interferer& m : interferers_[i]) {
    if (profile[static_cast<std::size_t>(m.cell)] != ch) continue;
    const double p = spec_.robust ? topo.cell(m.cell).active_prob : 1.0;
    if (p >= 1.0) {
      certain += m.power_mw;
    } else {
      uncertain.push_back({m.power_mw, p});
      uncertain_ids.push_back(m.cell);
    }
  }
  const double own = spec_.robust ? topo.cell(player).active_prob : 1.0;
  auto payoff = [&](double interference) {
    return payoff_of_rate(player, rate_from_interference(player, ch, interference));
  };

  if (static_cast<int>(uncertain.size()) <= kExactExpectationLimit) {
    return {own * enumerate_activity(uncertain, 0, certain, 1.0, payoff), 0.0};
  }

  // Seeded by the player and its co-channel set, so the estimate is a
  // deterministic function of the profile.
  std::uint64_t key = derive_seed(spec_.monte_carlo_seed,
                                  static_cast<std::uint64_t>(player));
  for (CellId id : uncertain_ids) key = derive_seed(key, static_cast<std::uint64_t>(id));
  Rng rng(key);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int samples = spec_.monte_carlo_samples;
  for (int s = 0; s < samples; ++s) {
    double interference = certain;
    for (const Uncertain& u : uncertain)
      if (rng.bernoulli(u.prob)) interference += u.power_mw;
    const double v = payoff(interference);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, (sum_sq / samples - mean * mean)) *
                     samples / (samples - 1.0);
  return {own * mean, own * std::sqrt(var / samples)};
}

double SpectrumAccessGame::utility(int player, const ActionProfile& profile) const {
  return expected_utility(player, profile).value;
}

void SpectrumAccessGame::realize_payoffs(const ActionProfile& profile, Rng& rng,
                                         std::span<double> out) const {
  if (!spec_.robust) {
    const ActiveSet all(signal_mw_.size(), true);
    for (int n = 0; n < num_players(); ++n)
      out[static_cast<std::size_t>(n)] = payoff_of_rate(n, rate(n, profile, all));
    return;
  }
  const ActiveSet active = sample_active_set(*spec_.topo, rng);
  for (int n = 0; n < num_players(); ++n) {
    out[static_cast<std::size_t>(n)] =
        active.contains(n) ? payoff_of_rate(n, rate(n, profile, active)) : 0.0;
  }
}

std::optional<PayoffRange> SpectrumAccessGame::payoff_bounds(int player) const {
  if (spec_.satisfaction_kind == SatisfactionKind::kNone) {
    // Realized payoffs are zero while inactive; otherwise the rate can not
    // drop below the all-interferers-on rate.
    const bool may_idle = spec_.robust && topology().cell(player).active_prob < 1.0;
    const double lo = may_idle || interferers_[static_cast<std::size_t>(player)].empty()
                          ? 0.0
                          : min_rate(player);
    return PayoffRange{lo, max_rate(player)};
  }
  return PayoffRange{0.0, 1.0};
}

std::shared_ptr<const SpectrumAccessGame> build_spectrum_game(
    SpectrumAccessGameSpec spec) {
  return std::make_shared<const SpectrumAccessGame>(std::move(spec));
}

}  // namespace csc
