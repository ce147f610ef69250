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

#include "csc/association_game.hpp"

#include <algorithm>
#include <string>

#include "csc/errors.hpp"

namespace csc {

void SapUserTopology::validate() const {
  std::vector<std::string> bad;
  if (saps.empty()) bad.emplace_back("saps");
  for (std::size_t s = 0; s < saps.size(); ++s) {
    if (saps[s].id != static_cast<int>(s))
      bad.push_back("saps[" + std::to_string(s) + "].id");
    if (!(saps[s].capacity_bps > 0.0))
      bad.push_back("saps[" + std::to_string(s) + "].capacity_bps");
  }
  for (std::size_t u = 0; u < users.size(); ++u) {
    const std::string path = "users[" + std::to_string(u) + "]";
    if (users[u].id != static_cast<int>(u)) bad.push_back(path + ".id");
    if (users[u].candidate_saps.empty()) bad.push_back(path + ".candidate_saps");
    for (int s : users[u].candidate_saps)
      if (s < 0 || static_cast<std::size_t>(s) >= saps.size())
        bad.push_back(path + ".candidate_saps");
  }
  if (!bad.empty()) {
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    throw ConfigError(bad, "invalid SAP/user topology: " + bad.front() +
                               (bad.size() > 1 ? " (and more)" : ""));
  }
  for (std::size_t u = 0; u < users.size(); ++u)
    csc::validate(users[u].traffic, "users[" + std::to_string(u) + "].traffic");
}

std::string_view to_string(AssociationUtility kind) {
  switch (kind) {
    case AssociationUtility::kDiscreteQoe: return "discrete_qoe";
    case AssociationUtility::kContinuousThroughput: return "continuous_throughput";
    case AssociationUtility::kRawThroughputMax: return "raw_throughput_max";
  }
  return "?";
}

AssociationUtility association_utility_from_string(std::string_view name) {
  if (name == "discrete_qoe") return AssociationUtility::kDiscreteQoe;
  if (name == "continuous_throughput") return AssociationUtility::kContinuousThroughput;
  if (name == "raw_throughput_max") return AssociationUtility::kRawThroughputMax;
  throw ConfigError({"association_kinds"},
                    "unknown association utility '" + std::string(name) + "'");
}

AssociationGame::AssociationGame(AssociationGameSpec spec) : spec_(std::move(spec)) {
  spec_.topo.validate();
  const auto& topo = spec_.topo;
  fixed_load_.assign(topo.saps.size(), 0);
  for (std::size_t u = 0; u < topo.users.size(); ++u) {
    const auto& c = topo.users[u].candidate_saps;
    if (c.size() == 1) {
      ++fixed_load_[static_cast<std::size_t>(c.front())];
    } else {
      players_.push_back(static_cast<int>(u));
    }
  }
  neighbors_.resize(players_.size());
  for (std::size_t p = 0; p < players_.size(); ++p) {
    const auto& cp = topo.users[static_cast<std::size_t>(players_[p])].candidate_saps;
    for (std::size_t q = 0; q < players_.size(); ++q) {
      if (p == q) continue;
      const auto& cq = topo.users[static_cast<std::size_t>(players_[q])].candidate_saps;
      const bool share = std::any_of(cp.begin(), cp.end(), [&](int s) {
        return std::find(cq.begin(), cq.end(), s) != cq.end();
      });
      if (share) neighbors_[p].push_back(static_cast<int>(q));
    }
  }
}

int AssociationGame::num_actions(int player) const {
  const int u = players_.at(static_cast<std::size_t>(player));
  return static_cast<int>(
      spec_.topo.users[static_cast<std::size_t>(u)].candidate_saps.size());
}

double AssociationGame::value_of_rate(const TrafficClass& tc, double rate) const {
  switch (spec_.utility_kind) {
    case AssociationUtility::kDiscreteQoe: return ordinal(qoe_level(rate, tc));
    case AssociationUtility::kContinuousThroughput: return mos_score(rate, tc);
    case AssociationUtility::kRawThroughputMax: return rate;
  }
  return rate;
}

double AssociationGame::utility(int player, const ActionProfile& profile) const {
  const auto& users = spec_.topo.users;
  const auto& me = users[static_cast<std::size_t>(players_.at(static_cast<std::size_t>(player)))];
  const int sap = me.candidate_saps.at(
      static_cast<std::size_t>(profile[static_cast<std::size_t>(player)]));
  int load = fixed_load_[static_cast<std::size_t>(sap)];
  for (std::size_t q = 0; q < players_.size(); ++q) {
    const Action a = profile[q];
    if (a == kUnobserved) continue;
    const auto& other = users[static_cast<std::size_t>(players_[q])];
    if (other.candidate_saps[static_cast<std::size_t>(a)] == sap) ++load;
  }
  const double rate = spec_.topo.saps[static_cast<std::size_t>(sap)].capacity_bps / load;
  return value_of_rate(me.traffic, rate);
}

std::optional<PayoffRange> AssociationGame::payoff_bounds(int player) const {
  if (spec_.utility_kind != AssociationUtility::kRawThroughputMax)
    return PayoffRange{1.0, 5.0};
  const auto& me = spec_.topo.users[static_cast<std::size_t>(players_.at(static_cast<std::size_t>(player)))];
  double hi = 0.0;
  for (int s : me.candidate_saps)
    hi = std::max(hi, spec_.topo.saps[static_cast<std::size_t>(s)].capacity_bps);
  return PayoffRange{0.0, hi};
}

std::vector<int> AssociationGame::sap_of_users(const ActionProfile& profile) const {
  validate_profile(*this, profile);
  const auto& users = spec_.topo.users;
  std::vector<int> sap(users.size());
  for (std::size_t u = 0; u < users.size(); ++u) sap[u] = users[u].candidate_saps.front();
  for (std::size_t p = 0; p < players_.size(); ++p) {
    const auto u = static_cast<std::size_t>(players_[p]);
    sap[u] = users[u].candidate_saps[static_cast<std::size_t>(profile[p])];
  }
  return sap;
}

std::vector<double> AssociationGame::user_rates(const ActionProfile& profile) const {
  const std::vector<int> sap = sap_of_users(profile);
  std::vector<int> load(spec_.topo.saps.size(), 0);
  for (int s : sap) ++load[static_cast<std::size_t>(s)];
  std::vector<double> rates(sap.size());
  for (std::size_t u = 0; u < sap.size(); ++u) {
    const auto s = static_cast<std::size_t>(sap[u]);
    rates[u] = spec_.topo.saps[s].capacity_bps / load[s];
  }
  return rates;
}

std::vector<QoeLevel> AssociationGame::user_levels(const ActionProfile& profile) const {
  const std::vector<double> rates = user_rates(profile);
  std::vector<QoeLevel> levels;
  levels.reserve(rates.size());
  for (std::size_t u = 0; u < rates.size(); ++u)
    levels.push_back(qoe_level(rates[u], spec_.topo.users[u].traffic));
  return levels;
}

SapUserTopology generate_association_topology(const AssociationLayoutParams& params) {
  std::vector<std::string> bad;
  if (params.sap_rows < 1) bad.emplace_back("sap_rows");
  if (params.sap_cols < 1) bad.emplace_back("sap_cols");
  if (params.sap_rows * params.sap_cols < 2 && params.flexible_users > 0)
    bad.emplace_back("sap_cols");
  if (!(params.sap_capacity_bps > 0.0)) bad.emplace_back("sap_capacity_bps");
  if (params.fixed_users < 0) bad.emplace_back("fixed_users");
  if (params.flexible_users < 0) bad.emplace_back("flexible_users");
  if (params.classes.empty()) bad.emplace_back("traffic_classes");
  if (!bad.empty()) throw ConfigError(bad, "invalid association layout");

  SapUserTopology topo;
  const int n_saps = params.sap_rows * params.sap_cols;
  for (int s = 0; s < n_saps; ++s) topo.saps.push_back(Sap{s, params.sap_capacity_bps});

  std::vector<std::pair<int, int>> adjacent_pairs;
  for (int r = 0; r < params.sap_rows; ++r)
    for (int c = 0; c < params.sap_cols; ++c) {
      const int s = r * params.sap_cols + c;
      if (c + 1 < params.sap_cols) adjacent_pairs.emplace_back(s, s + 1);
      if (r + 1 < params.sap_rows) adjacent_pairs.emplace_back(s, s + params.sap_cols);
    }

  Rng rng(params.seed);
  auto draw_class = [&] { return params.classes[rng.index(params.classes.size())]; };
  int id = 0;
  for (int i = 0; i < params.fixed_users; ++i) {
    AssociationUser u;
    u.id = id++;
    u.traffic = draw_class();
    u.candidate_saps = {static_cast<int>(rng.index(static_cast<std::uint64_t>(n_saps)))};
    topo.users.push_back(std::move(u));
  }
  for (int i = 0; i < params.flexible_users; ++i) {
    AssociationUser u;
    u.id = id++;
    u.traffic = draw_class();
    const auto [a, b] = adjacent_pairs[rng.index(adjacent_pairs.size())];
    u.candidate_saps = {a, b};
    topo.users.push_back(std::move(u));
  }
  topo.validate();
  return topo;
}

}  // namespace csc
