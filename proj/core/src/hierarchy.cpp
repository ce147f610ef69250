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

#include "csc/hierarchy.hpp"

#include <algorithm>
#include <string>

#include "csc/errors.hpp"

namespace csc {

void validate(const ClusterStructure& cs, const NetworkTopology& topo) {
  const std::size_t n = topo.size();
  if (cs.clusters.size() != cs.headers.size())
    throw ContractViolation("cluster/header count mismatch");
  if (cs.cluster_of.size() != n)
    throw ContractViolation("cluster_of does not cover every cell");
  std::vector<int> seen(n, 0);
  for (std::size_t k = 0; k < cs.clusters.size(); ++k) {
    const CellId h = cs.headers[k];
    const auto& members = cs.clusters[k];
    if (std::find(members.begin(), members.end(), h) == members.end())
      throw ContractViolation("header " + std::to_string(h) +
                              " is not in its own cluster");
    for (CellId m : members) {
      if (m < 0 || static_cast<std::size_t>(m) >= n)
        throw ContractViolation("cluster member out of range");
      if (seen[static_cast<std::size_t>(m)]++)
        throw ContractViolation("cell " + std::to_string(m) +
                                " is in more than one cluster");
      if (cs.cluster_of[static_cast<std::size_t>(m)] != static_cast<int>(k))
        throw ContractViolation("cluster_of disagrees for cell " + std::to_string(m));
      if (m != h && !topo.adjacent(m, h))
        throw ContractViolation("cell " + std::to_string(m) +
                                " is not adjacent to its header");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw ContractViolation("cell " + std::to_string(i) + " unclustered");
}

ClusterStructure cluster_topology(const NetworkTopology& topo) {
  const std::size_t n = topo.size();
  ClusterStructure cs;
  cs.cluster_of.assign(n, -1);
  std::size_t assigned = 0;
  while (assigned < n) {
    CellId header = -1;
    int best_degree = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (cs.cluster_of[i] >= 0) continue;
      int degree = 0;
      for (CellId m : topo.neighbors(static_cast<CellId>(i)))
        if (cs.cluster_of[static_cast<std::size_t>(m)] < 0) ++degree;
      if (degree > best_degree) {
        best_degree = degree;
        header = static_cast<CellId>(i);
      }
    }
    const int k = static_cast<int>(cs.clusters.size());
    std::vector<CellId> members{header};
    cs.cluster_of[static_cast<std::size_t>(header)] = k;
    for (CellId m : topo.neighbors(header)) {
      if (cs.cluster_of[static_cast<std::size_t>(m)] >= 0) continue;
      cs.cluster_of[static_cast<std::size_t>(m)] = k;
      members.push_back(m);
    }
    std::sort(members.begin(), members.end());
    assigned += members.size();
    cs.clusters.push_back(std::move(members));
    cs.headers.push_back(header);
  }
  validate(cs, topo);
  return cs;
}

HeaderGame::HeaderGame(std::shared_ptr<const SpectrumAccessGame> base,
                       ClusterStructure clusters, ActionProfile current)
    : base_(std::move(base)),
      clusters_(std::move(clusters)),
      current_(std::move(current)) {
  validate(clusters_, base_->topology());
  validate_profile(*base_, current_);
}

ActionProfile HeaderGame::embed(const ActionProfile& header_actions) const {
  ActionProfile global = current_;
  for (std::size_t k = 0; k < clusters_.headers.size(); ++k)
    global[static_cast<std::size_t>(clusters_.headers[k])] = header_actions[k];
  return global;
}

ActionProfile HeaderGame::project(const ActionProfile& global) const {
  ActionProfile local;
  for (CellId h : clusters_.headers) local.push_back(global[static_cast<std::size_t>(h)]);
  return local;
}

double HeaderGame::utility(int player, const ActionProfile& profile) const {
  const ActionProfile global = embed(profile);
  double sum = 0.0;
  for (CellId m : clusters_.clusters.at(static_cast<std::size_t>(player)))
    sum += base_->utility(m, global);
  return sum;
}

void HeaderGame::realize_payoffs(const ActionProfile& profile, Rng& rng,
                                 std::span<double> out) const {
  std::vector<double> all(static_cast<std::size_t>(base_->num_players()));
  base_->realize_payoffs(embed(profile), rng, all);
  for (std::size_t k = 0; k < clusters_.clusters.size(); ++k) {
    double sum = 0.0;
    for (CellId m : clusters_.clusters[k]) sum += all[static_cast<std::size_t>(m)];
    out[k] = sum;
  }
}

std::optional<PayoffRange> HeaderGame::payoff_bounds(int player) const {
  PayoffRange range{0.0, 0.0};
  for (CellId m : clusters_.clusters.at(static_cast<std::size_t>(player))) {
    const auto b = base_->payoff_bounds(m);
    if (!b) return std::nullopt;
    range.lo += b->lo;
    range.hi += b->hi;
  }
  return range;
}

std::vector<CellId> StagedPlan::conflict_cells() const {
  std::vector<CellId> cells;
  for (const auto& [a, b] : conflict_pairs) {
    cells.push_back(a);
    cells.push_back(b);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

StagedPlan build_hierarchical_stages(std::shared_ptr<const SpectrumAccessGame> base,
                                     const ClusterStructure& clusters,
                                     const ActionProfile& current) {
  const NetworkTopology& topo = base->topology();
  validate(clusters, topo);
  validate_profile(*base, current);

  StagedPlan plan;
  plan.header_game = std::make_shared<const HeaderGame>(base, clusters, current);

  // Members only see interference from their own cluster.
  SpectrumAccessGameSpec scoped_spec = base->spec();
  std::vector<std::vector<CellId>> scope(topo.size());
  for (std::size_t i = 0; i < topo.size(); ++i)
    for (CellId m : topo.neighbors(static_cast<CellId>(i)))
      if (clusters.cluster_of[static_cast<std::size_t>(m)] == clusters.cluster_of[i])
        scope[i].push_back(m);
  scoped_spec.interference_scope = std::move(scope);
  auto scoped = build_spectrum_game(std::move(scoped_spec));

  const int n_channels = base->num_actions(0);
  for (std::size_t k = 0; k < clusters.clusters.size(); ++k) {
    const CellId header = clusters.headers[k];
    MemberStage stage;
    stage.cluster = static_cast<int>(k);
    for (CellId m : clusters.clusters[k])
      if (m != header) stage.members.push_back(m);
    if (stage.members.empty()) continue;
    // Header policy: stay off the header's channel, when there is another.
    std::vector<Action> allowed;
    for (Action a = 0; a < n_channels; ++a)
      if (n_channels == 1 || a != current[static_cast<std::size_t>(header)])
        allowed.push_back(a);
    std::vector<std::vector<Action>> allowed_per(stage.members.size(), allowed);
    stage.game = std::make_shared<const RestrictedGame>(
        scoped, stage.members, current, std::move(allowed_per));
    plan.member_stages.push_back(std::move(stage));
  }

  for (std::size_t i = 0; i < topo.size(); ++i) {
    for (CellId m : topo.neighbors(static_cast<CellId>(i))) {
      if (static_cast<std::size_t>(m) <= i) continue;
      if (clusters.cluster_of[i] == clusters.cluster_of[static_cast<std::size_t>(m)])
        continue;
      if (current[i] == current[static_cast<std::size_t>(m)])
        plan.conflict_pairs.emplace_back(static_cast<CellId>(i), m);
    }
  }
  return plan;
}

std::shared_ptr<const RestrictedGame> conflict_game(
    std::shared_ptr<const SpectrumAccessGame> base,
    const std::vector<CellId>& cells, const ActionProfile& current) {
  std::vector<Action> all;
  for (Action a = 0; a < base->num_actions(0); ++a) all.push_back(a);
  std::vector<std::vector<Action>> allowed(cells.size(), all);
  return std::make_shared<const RestrictedGame>(std::move(base), cells, current,
                                                std::move(allowed));
}

}  // namespace csc
