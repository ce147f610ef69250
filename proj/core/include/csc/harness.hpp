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

// Runs an experiment's replications and persists what they produced.
//
// Layout under the output directory:
//   config.echo.json   the configuration (without the output directory)
//   runs/runs.jsonl    one line per learning run
//   summary.json       ExperimentSummary
//   summary.csv        one row per (config, metric, seed)
//   data/*.dat         two-column plot data

#ifndef CSC_HARNESS_HPP_
#define CSC_HARNESS_HPP_

#include <filesystem>
#include <string>

#include "csc/analysis.hpp"
#include "csc/config.hpp"

namespace csc {

struct RunOptions {
  // Worker threads. Results do not depend on it.
  int jobs = 1;
  // Write the per-iteration trace of every run into runs.jsonl.
  bool keep_traces = false;
};

struct ExperimentResult {
  ExperimentSummary summary;
  // One JSON document per learning run, in deterministic order.
  std::vector<nlohmann::json> runs;
  // Plot data keyed by file name.
  std::vector<std::pair<std::string, std::string>> data_files;
};

// Validates, runs every replication and reduces in a fixed order. A
// replication that throws is recorded in summary.failures and left out of the
// aggregates. Throws ConfigError on an invalid config.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

// Writes the artifacts into `dir` (created if needed).
void write_artifacts(const ExperimentConfig& config, const ExperimentResult& result,
                     const std::filesystem::path& dir);

// run_experiment, then write_artifacts into config.output_dir when set.
ExperimentResult run_and_persist(const ExperimentConfig& config, const RunOptions& options = {});

// Exact text written to summary.json.
std::string summary_file_text(const ExperimentSummary& summary);

// Reads summary.json from a results directory (or the file itself).
ExperimentSummary load_summary(const std::filesystem::path& path);

// Config label used in summaries for one point of an activity sweep.
std::string lambda_label(double lambda);
std::string n_label(int n);

}  // namespace csc

#endif  // CSC_HARNESS_HPP_
