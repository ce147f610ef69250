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

#include "csc/presets.hpp"

#include "csc/errors.hpp"

namespace csc {
namespace {

ExperimentConfig fig3() {
  ExperimentConfig c;
  c.name = "fig3";
  c.kind = ExperimentKind::kSatisfaction;
  c.replications = 100;
  c.topology.n_channels = 3;
  c.topology.bandwidth_hz = 200.0e3;
  c.sweep_n_cells = {10, 20, 30};
  c.traffic_classes = application_traffic_classes();
  c.satisfaction_kinds = {SatisfactionKind::kLinear, SatisfactionKind::kSigmoid,
                          SatisfactionKind::kConcave};
  c.sla.step = 0.1;
  c.sla.horizon = 3000;
  return c;
}

ExperimentConfig fig5() {
  ExperimentConfig c;
  c.name = "fig5";
  c.kind = ExperimentKind::kAssociationQoe;
  c.replications = 100;
  c.association.sap_rows = 3;
  c.association.sap_cols = 4;
  c.association.sap_capacity_bps = 12.0e6;
  c.association.fixed_users = 78;
  c.association.flexible_users = 20;
  c.association.classes = traffic::skype_catalog();
  c.association_utilities = {AssociationUtility::kDiscreteQoe,
                             AssociationUtility::kContinuousThroughput,
                             AssociationUtility::kRawThroughputMax};
  return c;
}

ExperimentConfig fig7() {
  ExperimentConfig c;
  c.name = "fig7";
  c.kind = ExperimentKind::kHierarchicalQ;
  c.replications = 100;
  c.topology.n_channels = 4;
  c.sweep_n_cells = {50, 80};
  c.q_learning.alpha = 0.5;
  c.q_learning.epsilon0 = 0.3;
  c.q_learning.tau = 100.0;
  c.q_learning.window = 20;
  c.q_learning.horizon = 5000;
  return c;
}

ExperimentConfig fig8() {
  ExperimentConfig c;
  c.name = "fig8";
  c.kind = ExperimentKind::kRobustNeGap;
  c.replications = 100;
  c.topology.seed = 1;
  c.topology.n_cells = 9;
  c.topology.n_channels = 3;
  c.fixed_topology = true;
  c.sweep_active_prob = {0.3, 0.5, 0.8, 1.0};
  c.sla.step = 0.05;
  c.sla.horizon = 20000;
  return c;
}

struct Entry {
  PresetInfo info;
  ExperimentConfig (*make)();
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"fig3", "fig3-satisfaction",
        "satisfied-user ratio of SLA channel selection under linear, sigmoid and "
        "concave satisfaction, n = 10, 20, 30"},
       fig3},
      {{"fig5", "fig5-association-qoe",
        "QoE levels of 78 fixed + 20 flexible users under three association utilities"},
       fig5},
      {{"fig7", "fig7-hierarchical-q",
        "convergence iterations of simultaneous vs staged Q-learning, n = 50, 80"},
       fig7},
      {{"fig8", "fig8-robust-9cell",
        "9-cell robust game over activity 0.3 to 1.0: SLA vs optimum and best/worst NE"},
       fig8},
  };
  return entries;
}

}  // namespace

std::vector<TrafficClass> application_traffic_classes() {
  return {make_traffic_class("g711-pcm", 64.0e3, 64.0e3, 64.0e3),
          make_traffic_class("wmv", 500.0e3, 500.0e3, 500.0e3),
          make_traffic_class("avi-rm", 1.0e6, 1.0e6, 1.0e6),
          make_traffic_class("flash", 700.0e3, 700.0e3, 700.0e3),
          make_traffic_class("h264", 2.0e6, 2.0e6, 2.0e6)};
}

const std::vector<PresetInfo>& list_presets() {
  static const std::vector<PresetInfo> infos = [] {
    std::vector<PresetInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

ExperimentConfig preset(std::string_view name) {
  for (const auto& e : registry())
    if (e.info.name == name || e.info.alias == name) return e.make();
  throw ConfigError({"preset"}, "unknown preset '" + std::string(name) + "'");
}

}  // namespace csc
