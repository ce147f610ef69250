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

// Reported quantities computed from run records and oracles, and the
// experiment summary document they are collected in.

#ifndef CSC_ANALYSIS_HPP_
#define CSC_ANALYSIS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "csc/association_game.hpp"
#include "csc/game.hpp"
#include "csc/learning.hpp"
#include "csc/spectrum_game.hpp"
#include "csc/stats.hpp"
#include "csc/utility.hpp"

namespace csc {

inline constexpr double kDefaultSatisfiedThreshold = 0.95;

// Fraction of users whose rate reaches `threshold` times their demand
// (linear satisfaction >= threshold), whatever utility drove the learning.
double satisfied_ratio(std::span<const double> rates,
                       std::span<const TrafficClass> traffic,
                       double threshold = kDefaultSatisfiedThreshold);
// Rates of the record's final profile with every cell active.
double satisfied_ratio(const RunRecord& record, const SpectrumAccessGame& game,
                       double threshold = kDefaultSatisfiedThreshold);

// User counts per level, index ordinal - 1 (Bad first).
using QoeHistogram = std::array<int, 5>;

QoeHistogram qoe_histogram(std::span<const QoeLevel> levels);
// Every user, fixed and flexible, at the record's final association.
QoeHistogram qoe_histogram(const RunRecord& record, const AssociationGame& game);
int good_or_better(const QoeHistogram& histogram);

struct CdfPoint {
  double iterations = 0.0;
  double fraction = 0.0;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// Empirical CDF of convergence iterations; runs that never converged count
// in the denominator only, so the last point is the converged fraction.
// Throws std::invalid_argument on an empty input.
std::vector<CdfPoint> convergence_cdf(std::span<const std::optional<int>> iterations);
// Uses iterations_run() of the converged records.
std::vector<CdfPoint> convergence_cdf(std::span<const RunRecord> records);

struct NeGapReport {
  // False when the profile space exceeded the enumeration cap.
  bool oracle_available = false;
  double optimum = 0.0;
  double best_ne = 0.0;
  double worst_ne = 0.0;
  std::size_t ne_count = 0;
  ActionProfile optimum_profile;
  std::vector<double> learned;
};

NeGapReport ne_gap_report(const Game& game, const Welfare& welfare,
                          std::span<const double> learned = {},
                          const EnumerationOptions& options = {});

// ---------------------------------------------------------------------------
// Experiment summary.

struct SummaryEntry {
  std::string config;  // e.g. "n=20/concave"
  std::string metric;
  Aggregate stats;
  std::vector<std::uint64_t> seeds;
  std::vector<double> values;
  friend bool operator==(const SummaryEntry&, const SummaryEntry&) = default;
};

struct Baseline {
  std::string config;
  std::string name;  // optimum | best_ne | worst_ne | ...
  double value = 0.0;
  friend bool operator==(const Baseline&, const Baseline&) = default;
};

struct Comparison {
  std::string config;
  std::string metric;
  std::string name;  // "<a> > <b>"
  PairedTest test;
};

struct CdfSeries {
  std::string config;
  std::vector<CdfPoint> points;
  friend bool operator==(const CdfSeries&, const CdfSeries&) = default;
};

struct RunFailure {
  std::string config;
  std::uint64_t seed = 0;
  std::string message;
  friend bool operator==(const RunFailure&, const RunFailure&) = default;
};

struct ExperimentSummary {
  std::string experiment;
  std::string version;
  std::string config_digest;
  std::vector<SummaryEntry> entries;
  std::vector<Baseline> baselines;
  std::vector<Comparison> comparisons;
  std::vector<CdfSeries> cdfs;
  std::vector<RunFailure> failures;
  std::vector<std::string> notes;

  const SummaryEntry* find(std::string_view config, std::string_view metric) const;
  std::optional<double> baseline(std::string_view config, std::string_view name) const;
  const Comparison* comparison(std::string_view config, std::string_view name) const;
};

nlohmann::json summary_to_json(const ExperimentSummary& summary);
ExperimentSummary summary_from_json(const nlohmann::json& doc);
// One row per (config, metric, seed).
std::string summary_to_csv(const ExperimentSummary& summary);

// Report metrics accepted by format_report.
inline constexpr std::array<std::string_view, 4> kReportMetrics = {
    "ne-gap", "satisfied", "qoe", "convergence"};

// Plain-text table for one metric family. Throws ConfigError for an unknown
// metric name.
std::string format_report(const ExperimentSummary& summary, std::string_view metric);

// Shortest decimal that round-trips.
std::string format_number(double value);

// Line-delimited log form of a record; the per-iteration trace is included
// only on request.
nlohmann::json run_record_to_json(const RunRecord& record, bool include_trace = false);

}  // namespace csc

#endif  // CSC_ANALYSIS_HPP_
