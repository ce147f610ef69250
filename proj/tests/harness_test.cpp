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

#include "csc/harness.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "csc/errors.hpp"
#include "csc/presets.hpp"
#include "csc/spectrum_game.hpp"
#include "test_util.hpp"

namespace csc {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("csc_harness_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_robust(int replications) {
  auto c = preset("fig8");
  c.replications = replications;
  c.sla.horizon = 4000;
  return c;
}

TEST(Harness, SingleReplicationFlagsInsufficientCi) {
  const auto r = run_experiment(small_robust(1));
  const auto* e = r.summary.find(lambda_label(0.5), "welfare");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->stats.n, 1u);
  EXPECT_TRUE(e->stats.ci_insufficient);
}

TEST(Harness, IdenticalRunsGiveIdenticalArtifacts) {
  const auto c = small_robust(3);
  const auto a = scratch("a"), b = scratch("b");
  write_artifacts(c, run_experiment(c), a);
  write_artifacts(c, run_experiment(c, {2, false}), b);
  for (const char* f : {"summary.json", "summary.csv", "config.echo.json", "runs/runs.jsonl"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  for (const auto& entry : fs::directory_iterator(a / "data"))
    EXPECT_EQ(slurp(entry.path()), slurp(b / "data" / entry.path().filename()));
  EXPECT_EQ(load_summary(a).config_digest, config_digest(c));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Harness, JobsDoNotChangeSummaryOnAnyKind) {
  for (const char* name : {"fig3", "fig5", "fig7"}) {
    auto c = preset(name);
    c.replications = 2;
    c.sla.horizon = 300;
    c.q_learning.horizon = 300;
    if (!c.sweep_n_cells.empty()) c.sweep_n_cells = {c.sweep_n_cells.front()};
    const auto one = run_experiment(c, {1, false});
    const auto three = run_experiment(c, {3, false});
    EXPECT_EQ(summary_file_text(one.summary), summary_file_text(three.summary)) << name;
    EXPECT_EQ(one.runs, three.runs) << name;
  }
}

TEST(Harness, RobustPipelineMatchesModuleOracles) {
  const auto c = small_robust(2);
  const auto r = run_experiment(c);
  for (double lambda : c.active_prob_values()) {
    TopologyParams tp = c.topology;
    tp.active_prob = {lambda};
    SpectrumAccessGameSpec s;
    s.topo = testing::share(generate_topology(tp));
    s.robust = true;
    const auto g = build_spectrum_game(s);
    const EnumerationOptions eo{kExpectationNeTolerance, 1e7, 1};
    const auto opt = exhaustive_optimum(*g, welfare_sum(), eo);
    const auto ne = enumerate_pure_ne(*g, eo);
    double best = -1.0, worst = 1e300;
    for (const auto& p : ne) {
      const double w = evaluate_welfare(*g, p, welfare_sum());
      best = std::max(best, w);
      worst = std::min(worst, w);
    }
    const auto label = lambda_label(lambda);
    EXPECT_DOUBLE_EQ(*r.summary.baseline(label, "optimum"), opt.welfare);
    EXPECT_DOUBLE_EQ(*r.summary.baseline(label, "best_ne"), best);
    EXPECT_DOUBLE_EQ(*r.summary.baseline(label, "worst_ne"), worst);
    EXPECT_EQ(*r.summary.baseline(label, "ne_count"), static_cast<double>(ne.size()));
    // Learned welfare recomputed from the persisted final profiles.
    const auto* e = r.summary.find(label, "welfare");
    ASSERT_NE(e, nullptr);
    std::size_t k = 0;
    for (const auto& line : r.runs) {
      if (line["config"] != label) continue;
      ActionProfile fp = line["record"]["final_profile"].get<ActionProfile>();
      EXPECT_DOUBLE_EQ(evaluate_welfare(*g, fp, welfare_sum()), e->values.at(k++));
    }
    EXPECT_EQ(k, e->values.size());
  }
}

TEST(Harness, InvalidConfigRejectedBeforeRunning) {
  auto c = small_robust(1);
  c.sweep_active_prob = {-0.1};
  EXPECT_THROW(run_experiment(c), ConfigError);
}

TEST(Harness, KeepTracesAddsIterations) {
  auto c = small_robust(1);
  c.sweep_active_prob = {1.0};
  const auto plain = run_experiment(c);
  const auto traced = run_experiment(c, {1, true});
  EXPECT_FALSE(plain.runs.front()["record"].contains("trace"));
  EXPECT_TRUE(traced.runs.front()["record"].contains("trace"));
  EXPECT_EQ(summary_file_text(plain.summary), summary_file_text(traced.summary));
}

TEST(Harness, DataFilesPerKind) {
  auto c = small_robust(1);
  const auto r = run_experiment(c);
  std::vector<std::string> names;
  for (const auto& [n, text] : r.data_files) names.push_back(n);
  for (const char* f : {"welfare_optimum.dat", "welfare_best_ne.dat", "welfare_worst_ne.dat", "welfare_sla.dat"})
    EXPECT_NE(std::find(names.begin(), names.end(), f), names.end()) << f;
}

}  // namespace
}  // namespace csc
