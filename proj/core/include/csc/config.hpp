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

// Experiment definitions and their JSON form.
//
// Schema (every key but "name" and "kind" is optional and defaults to the
// values below; unknown keys are rejected):
//   {"name": str,
//    "kind": "satisfaction" | "association_qoe" | "hierarchical_q" |
//            "robust_ne_gap",
//    "seeds": {"base": u64, "replications": int, "list": [u64, ...]},
//             (a non-empty list overrides base and replications)
//    "output_dir": str,
//    "topology": {"seed", "n_cells", "region": {"width", "height"},
//                 "interference_radius_m", "n_channels", "bandwidth_hz",
//                 "tx_power_dbm", "active_prob": [..]},
//    "fixed_topology": bool,
//    "sweep": {"n_cells": [int], "active_prob": [real]},
//    "propagation": {"noise_dbm", "pathloss_exponent", "serving_distance_m"},
//    "traffic_classes": [traffic class],
//    "satisfaction_kinds": ["linear" | "sigmoid" | "concave" | "none"],
//    "association": {"sap_rows", "sap_cols", "sap_capacity_bps",
//                    "fixed_users", "flexible_users", "classes": [..]},
//    "association_utilities": ["discrete_qoe" | "continuous_throughput" |
//                              "raw_throughput_max"],
//    "sla": {"horizon", "step", "convergence_threshold"},
//    "best_response": {"horizon", "schedule": "round_robin" | "random",
//                      "tolerance"},
//    "q_learning": {"horizon", "alpha", "epsilon0", "tau", "window"},
//    "satisfied_threshold": real,
//    "monte_carlo_samples": int,
//    "enumeration_cap": real}

#ifndef CSC_CONFIG_HPP_
#define CSC_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "csc/association_game.hpp"
#include "csc/learning.hpp"
#include "csc/net_model.hpp"
#include "csc/utility.hpp"

namespace csc {

enum class ExperimentKind {
  // Spectrum game under each satisfaction kind, SLA, satisfied-user ratio
  // over a cell-count sweep.
  kSatisfaction,
  // SAP association under each utility kind, best response, QoE histograms.
  kAssociationQoe,
  // Simultaneous against staged Q-learning, convergence iterations over a
  // cell-count sweep.
  kHierarchicalQ,
  // Robust spectrum game over an activity sweep, SLA welfare against the
  // exhaustive optimum and the best and worst equilibria.
  kRobustNeGap,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::kRobustNeGap;

  // Explicit seeds win; otherwise base_seed, base_seed + 1, ...
  std::vector<std::uint64_t> seed_list;
  std::uint64_t base_seed = 1;
  int replications = 1;

  // Where artifacts go. Does not affect results and is left out of the
  // digest and the persisted echo.
  std::string output_dir;

  // Base topology. Unless fixed_topology is set, each replication draws its
  // own placement from the replication seed.
  TopologyParams topology;
  bool fixed_topology = false;
  std::vector<int> sweep_n_cells;
  std::vector<double> sweep_active_prob;
  PropagationParams propagation;

  std::vector<TrafficClass> traffic_classes;
  std::vector<SatisfactionKind> satisfaction_kinds;

  AssociationLayoutParams association;
  std::vector<AssociationUtility> association_utilities;

  SlaParams sla;
  BestResponseParams best_response;
  QLearningParams q_learning;

  double satisfied_threshold = 0.95;
  int monte_carlo_samples = 4096;
  double enumeration_cap = 1e7;

  std::vector<std::uint64_t> seeds() const;
  // Cell counts swept (the topology's count when no sweep is given).
  std::vector<int> n_cells_values() const;
  std::vector<double> active_prob_values() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Throws ConfigError listing every offending field.
void validate(const ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);
// Parses and validates. Throws ConfigError listing every offending field.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

// The echo persisted next to the results: config_to_json without the output
// directory.
nlohmann::json config_echo(const ExperimentConfig& config);
// Hex SHA-256 of the compact echo.
std::string config_digest(const ExperimentConfig& config);

}  // namespace csc

#endif  // CSC_CONFIG_HPP_
