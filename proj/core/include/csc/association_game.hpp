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

#ifndef CSC_ASSOCIATION_GAME_HPP_
#define CSC_ASSOCIATION_GAME_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "csc/game.hpp"
#include "csc/utility.hpp"

namespace csc {

// Small-cell access point.
struct Sap {
  int id = 0;
  double capacity_bps = 0.0;
  friend bool operator==(const Sap&, const Sap&) = default;
};

struct AssociationUser {
  int id = 0;
  TrafficClass traffic;
  // SAPs the user can reach. Users with a single candidate are fixed.
  std::vector<int> candidate_saps;
  friend bool operator==(const AssociationUser&, const AssociationUser&) = default;
};

struct SapUserTopology {
  std::vector<Sap> saps;
  std::vector<AssociationUser> users;

  // Throws ConfigError (empty candidate sets, unknown SAPs, bad ids).
  void validate() const;
  friend bool operator==(const SapUserTopology&, const SapUserTopology&) = default;
};

enum class AssociationUtility {
  // Ordinal QoE level (1..5) of the user's throughput.
  kDiscreteQoe,
  // Continuous opinion score of the throughput: the same curve as the QoE
  // levels before discretization.
  kContinuousThroughput,
  // The throughput itself; demand is ignored.
  kRawThroughputMax,
};

std::string_view to_string(AssociationUtility kind);
AssociationUtility association_utility_from_string(std::string_view name);

struct AssociationGameSpec {
  SapUserTopology topo;
  AssociationUtility utility_kind = AssociationUtility::kDiscreteQoe;
};

// Users in overlap regions pick one SAP each. A SAP's capacity is split
// equally among every user on it, fixed users included.
class AssociationGame final : public Game {
 public:
  explicit AssociationGame(AssociationGameSpec spec);

  int num_players() const override { return static_cast<int>(players_.size()); }
  int num_actions(int player) const override;
  double utility(int player, const ActionProfile& profile) const override;
  bool has_neighbor_sets() const override { return true; }
  std::span<const int> neighbors(int player) const override {
    return neighbors_.at(static_cast<std::size_t>(player));
  }
  std::optional<PayoffRange> payoff_bounds(int player) const override;

  // Index (into topo.users) of the user behind each player.
  const std::vector<int>& player_users() const { return players_; }
  // SAP of every user (fixed and flexible) under `profile`.
  std::vector<int> sap_of_users(const ActionProfile& profile) const;
  // Equal-share throughput of every user.
  std::vector<double> user_rates(const ActionProfile& profile) const;
  std::vector<QoeLevel> user_levels(const ActionProfile& profile) const;

  const AssociationGameSpec& spec() const { return spec_; }

 private:
  double value_of_rate(const TrafficClass& tc, double rate) const;

  AssociationGameSpec spec_;
  std::vector<int> players_;
  std::vector<int> fixed_load_;
  std::vector<std::vector<int>> neighbors_;
};

struct AssociationLayoutParams {
  std::uint64_t seed = 1;
  int sap_rows = 3;
  int sap_cols = 4;
  double sap_capacity_bps = 12.0e6;
  int fixed_users = 78;
  int flexible_users = 20;
  // Each user's class is drawn uniformly from this list.
  std::vector<TrafficClass> classes = traffic::skype_catalog();
};

// SAPs on a rows x cols grid. Fixed users land on a uniformly drawn SAP;
// flexible users on a uniformly drawn pair of grid-adjacent SAPs.
SapUserTopology generate_association_topology(const AssociationLayoutParams& params);

}  // namespace csc

#endif  // CSC_ASSOCIATION_GAME_HPP_
