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

// Cluster-based hierarchy over a spectrum access game.
//
// Stage 1: cluster headers pick channels, each scoring the sum of its
//          cluster's utilities with the members' channels held fixed.
// Stage 2: inside every cluster the members pick channels against their own
//          cluster only; a member may not reuse its header's channel.
// Stage 3: cells on inter-cluster edges that still share a channel keep
//          learning against the full game.

#ifndef CSC_HIERARCHY_HPP_
#define CSC_HIERARCHY_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "csc/game.hpp"
#include "csc/net_model.hpp"
#include "csc/spectrum_game.hpp"

namespace csc {

struct ClusterStructure {
  // Sorted member lists; each includes its header.
  std::vector<std::vector<CellId>> clusters;
  std::vector<CellId> headers;
  // Cluster index of every cell.
  std::vector<int> cluster_of;

  friend bool operator==(const ClusterStructure&, const ClusterStructure&) = default;
};

// Throws ContractViolation unless the clusters are a disjoint cover of the
// topology, each header belongs to its cluster and every member is adjacent
// to its header.
void validate(const ClusterStructure& clusters, const NetworkTopology& topo);

// Greedy max-degree clustering: repeatedly elect the unassigned cell with the
// most unassigned neighbors (lowest id on ties) and absorb those neighbors.
ClusterStructure cluster_topology(const NetworkTopology& topo);

// Stage-1 game over the cluster headers (player k is the header of cluster
// k). The other cells are held at `current`.
class HeaderGame final : public Game {
 public:
  HeaderGame(std::shared_ptr<const SpectrumAccessGame> base,
             ClusterStructure clusters, ActionProfile current);

  int num_players() const override {
    return static_cast<int>(clusters_.headers.size());
  }
  int num_actions(int) const override { return base_->num_actions(0); }
  double utility(int player, const ActionProfile& profile) const override;
  void realize_payoffs(const ActionProfile& profile, Rng& rng,
                       std::span<double> out) const override;
  std::optional<PayoffRange> payoff_bounds(int player) const override;

  ActionProfile embed(const ActionProfile& header_actions) const;
  ActionProfile project(const ActionProfile& global) const;

 private:
  std::shared_ptr<const SpectrumAccessGame> base_;
  ClusterStructure clusters_;
  ActionProfile current_;
};

struct MemberStage {
  int cluster = 0;
  std::vector<CellId> members;  // header excluded
  std::shared_ptr<const RestrictedGame> game;
};

struct StagedPlan {
  std::shared_ptr<const HeaderGame> header_game;
  // Clusters with at least one non-header member.
  std::vector<MemberStage> member_stages;
  // Inter-cluster adjacent pairs (a < b) sharing a channel in `current`.
  std::vector<std::pair<CellId, CellId>> conflict_pairs;

  std::vector<CellId> conflict_cells() const;
};

StagedPlan build_hierarchical_stages(std::shared_ptr<const SpectrumAccessGame> base,
                                     const ClusterStructure& clusters,
                                     const ActionProfile& current);

// Stage-3 game: the given cells are free over every channel, all others held
// at `current`, utilities from the full game.
std::shared_ptr<const RestrictedGame> conflict_game(
    std::shared_ptr<const SpectrumAccessGame> base,
    const std::vector<CellId>& cells, const ActionProfile& current);

}  // namespace csc

#endif  // CSC_HIERARCHY_HPP_
