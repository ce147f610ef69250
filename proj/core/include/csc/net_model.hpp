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

// Physical small-cell deployment: cell positions, channels, transmit power
// and activity probabilities, plus the interference graph derived from them.

#ifndef CSC_NET_MODEL_HPP_
#define CSC_NET_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csc/random.hpp"

namespace csc {

using CellId = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Region {
  double width = 100.0;
  double height = 100.0;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Channel {
  int id = 0;
  double bandwidth_hz = 1.0e6;
  friend bool operator==(const Channel&, const Channel&) = default;
};

struct Cell {
  CellId id = 0;
  Point position;
  double tx_power_dbm = 20.0;
  // Probability that the cell transmits in a decision period, in (0, 1].
  double active_prob = 1.0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Immutable deployment. Two cells are adjacent iff their distance is at most
// the interference radius (protocol model); co-channel use is decided by the
// games on top of this graph.
class NetworkTopology {
 public:
  // Validates the inputs and derives the graph. Throws ConfigError naming the
  // offending fields.
  NetworkTopology(std::vector<Cell> cells, Region region,
                  std::vector<Channel> channels, double interference_radius_m);

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(CellId id) const;
  std::size_t size() const noexcept { return cells_.size(); }
  const Region& region() const noexcept { return region_; }
  const std::vector<Channel>& channels() const noexcept { return channels_; }
  double interference_radius_m() const noexcept { return radius_m_; }

  // Sorted neighbor ids of `id`; throws std::out_of_range for unknown ids.
  const std::vector<CellId>& neighbors(CellId id) const;
  bool adjacent(CellId a, CellId b) const;
  double distance(CellId a, CellId b) const;
  std::size_t edge_count() const noexcept;

  friend bool operator==(const NetworkTopology&,
                         const NetworkTopology&) = default;

 private:
  std::vector<Cell> cells_;
  Region region_;
  std::vector<Channel> channels_;
  double radius_m_;
  std::vector<std::vector<CellId>> adjacency_;
};

struct TopologyParams {
  std::uint64_t seed = 1;
  int n_cells = 9;
  Region region;
  double interference_radius_m = 30.0;
  int n_channels = 3;
  double bandwidth_hz = 1.0e6;
  double tx_power_dbm = 20.0;
  // One entry applies to every cell; otherwise one entry per cell.
  std::vector<double> active_prob{1.0};
};

// Cells placed i.i.d. uniformly over the region from a generator seeded with
// params.seed. Throws ConfigError on invalid parameters (e.g. zero channels).
NetworkTopology generate_topology(const TopologyParams& params);

std::vector<CellId> neighbors(const NetworkTopology& topo, CellId cell);

// Cells transmitting in one decision period.
class ActiveSet {
 public:
  ActiveSet() = default;
  explicit ActiveSet(std::size_t n, bool all_active = true)
      : mask_(n, all_active ? 1 : 0) {}

  static ActiveSet from_ids(std::size_t n, const std::vector<CellId>& ids);

  bool contains(CellId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < mask_.size() &&
           mask_[static_cast<std::size_t>(id)] != 0;
  }
  void set(CellId id, bool active) {
    mask_.at(static_cast<std::size_t>(id)) = active ? 1 : 0;
  }
  std::size_t size() const noexcept { return mask_.size(); }
  std::vector<CellId> ids() const;

  friend bool operator==(const ActiveSet&, const ActiveSet&) = default;

 private:
  std::vector<std::uint8_t> mask_;
};

// Each cell included independently with its active probability.
ActiveSet sample_active_set(const NetworkTopology& topo, Rng& rng);

// Topology document:
//   {"region": {"width": w, "height": h}, "interference_radius_m": r,
//    "channels": [{"id": 0, "bandwidth_hz": b}, ...],
//    "cells": [{"id": 0, "x": .., "y": .., "tx_power_dbm": ..,
//               "active_prob": ..}, ...]}
// The graph is not stored; it is re-derived on load.
nlohmann::json topology_to_json(const NetworkTopology& topo);
NetworkTopology topology_from_json(const nlohmann::json& doc);
NetworkTopology load_topology(const std::filesystem::path& path);
void save_topology(const NetworkTopology& topo,
                   const std::filesystem::path& path);

}  // namespace csc

#endif  // CSC_NET_MODEL_HPP_
