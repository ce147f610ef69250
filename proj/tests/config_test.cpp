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

#include "csc/config.hpp"

#include <algorithm>
#include <fstream>

#include <gtest/gtest.h>

#include "csc/errors.hpp"
#include "csc/presets.hpp"

#ifndef CSC_DATA_DIR
#define CSC_DATA_DIR "data"
#endif

namespace csc {
namespace {

const std::string kConfigs = std::string(CSC_DATA_DIR) + "/configs/";

std::vector<std::string> offending(const nlohmann::json& doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError& e) {
    return e.fields();
  }
  return {};
}

bool names(const std::vector<std::string>& fields, const std::string& f) {
  return std::find(fields.begin(), fields.end(), f) != fields.end();
}

TEST(Config, JsonRoundTripOfEveryPreset) {
  for (const auto& info : list_presets()) {
    const auto c = preset(info.name);
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(back, c) << info.name;
    EXPECT_EQ(config_digest(back), config_digest(c));
  }
}

TEST(Config, ShippedConfigsLoad) {
  const auto c = load_config(kConfigs + "robust_small.json");
  EXPECT_EQ(c.kind, ExperimentKind::kRobustNeGap);
  EXPECT_EQ(c.seeds(), (std::vector<std::uint64_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(c.active_prob_values(), (std::vector<double>{0.5, 1.0}));
  const auto s = load_config(kConfigs + "satisfaction_small.json");
  EXPECT_EQ(s.seeds(), (std::vector<std::uint64_t>{3, 4, 5}));
  EXPECT_EQ(s.n_cells_values(), (std::vector<int>{6, 8}));
  EXPECT_EQ(s.satisfaction_kinds.size(), 3u);
}

TEST(Config, NegativeActivityNamesTheField) {
  try {
    load_config(kConfigs + "bad_negative_lambda.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(names(e.fields(), "topology.active_prob[0]"));
    EXPECT_NE(std::string(e.what()).find("topology.active_prob[0]"), std::string::npos);
  }
}

TEST(Config, CollectsEveryBadField) {
  const auto f = offending(nlohmann::json::parse(R"({
    "name": "x", "kind": "robust_ne_gap",
    "topology": {"n_cells": 0, "interference_radius_m": 0},
    "q_learning": {"alpha": 2.0},
    "seeds": {"replications": 0}
  })"));
  EXPECT_TRUE(names(f, "topology.n_cells"));
  EXPECT_TRUE(names(f, "topology.interference_radius_m"));
  EXPECT_TRUE(names(f, "q_learning.alpha"));
  EXPECT_TRUE(names(f, "seeds.replications"));
}

TEST(Config, UnknownKeysAndKindsRejected) {
  EXPECT_FALSE(offending(nlohmann::json::parse(R"({"name": "x", "kind": "robust_ne_gap", "typo": 1})")).empty());
  EXPECT_FALSE(offending(nlohmann::json::parse(R"({"name": "x", "kind": "nope"})")).empty());
  EXPECT_FALSE(offending(nlohmann::json::parse(R"({"name": "x", "kind": "robust_ne_gap", "sweep": {"active_prob": [1.5]}})")).empty());
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(load_config(kConfigs + "does_not_exist.json"), ConfigError);
}

TEST(Config, DigestIgnoresOutputDirOnly) {
  auto a = preset("fig8");
  auto b = a;
  b.output_dir = "/elsewhere";
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_FALSE(config_echo(b).contains("output_dir"));
  b.replications = 7;
  EXPECT_NE(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 64u);
}

TEST(Presets, Fig3) {
  const auto c = preset("fig3");
  EXPECT_EQ(c.kind, ExperimentKind::kSatisfaction);
  EXPECT_EQ(c.n_cells_values(), (std::vector<int>{10, 20, 30}));
  EXPECT_EQ(c.satisfaction_kinds.size(), 3u);
  EXPECT_EQ(c.seeds().size(), 100u);
}

TEST(Presets, Fig5) {
  const auto c = preset("fig5");
  EXPECT_EQ(c.kind, ExperimentKind::kAssociationQoe);
  EXPECT_EQ(c.association.fixed_users, 78);
  EXPECT_EQ(c.association.flexible_users, 20);
  EXPECT_EQ(c.association_utilities.size(), 3u);
}

TEST(Presets, Fig7) {
  const auto c = preset("fig7-hierarchical-q");
  EXPECT_EQ(c.kind, ExperimentKind::kHierarchicalQ);
  EXPECT_EQ(c.n_cells_values(), (std::vector<int>{50, 80}));
}

TEST(Presets, Fig8) {
  const auto c = preset("fig8");
  EXPECT_EQ(c.kind, ExperimentKind::kRobustNeGap);
  EXPECT_EQ(c.topology.n_cells, 9);
  EXPECT_TRUE(c.fixed_topology);
  EXPECT_EQ(c.active_prob_values(), (std::vector<double>{0.3, 0.5, 0.8, 1.0}));
}

TEST(Presets, UnknownNameIsConfigError) {
  try {
    preset("fig99");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_TRUE(names(e.fields(), "preset"));
  }
  EXPECT_EQ(list_presets().size(), 4u);
}

}  // namespace
}  // namespace csc
