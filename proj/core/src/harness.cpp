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

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "csc/association_game.hpp"
#include "csc/errors.hpp"
#include "csc/hierarchy.hpp"
#include "csc/spectrum_game.hpp"
#include "csc/version.hpp"

namespace csc {
namespace {

using nlohmann::json;

struct Sample {
  std::string config;
  std::string metric;
  double value;
};

// What one unit of work produced.
struct UnitResult {
  std::vector<Sample> samples;
  std::vector<Baseline> baselines;
  std::vector<json> runs;
};

struct Unit {
  std::string config;  // label used if the unit fails
  std::uint64_t seed;
  std::function<UnitResult()> work;
};

json run_line(const std::string& config, std::uint64_t seed, const RunRecord& record,
              const json& metrics, bool keep_traces) {
  return json{{"config", config},
              {"seed", seed},
              {"metrics", metrics},
              {"record", run_record_to_json(record, keep_traces)}};
}

std::shared_ptr<const NetworkTopology> make_topology(const ExperimentConfig& c, int n_cells,
                                                     double lambda, std::uint64_t seed) {
  TopologyParams tp = c.topology;
  tp.n_cells = n_cells;
  tp.seed = c.fixed_topology ? c.topology.seed : seed;
  if (lambda > 0.0) tp.active_prob = {lambda};
  return std::make_shared<const NetworkTopology>(generate_topology(tp));
}

SpectrumAccessGameSpec base_spec(const ExperimentConfig& c,
                                 std::shared_ptr<const NetworkTopology> topo,
                                 std::uint64_t seed) {
  SpectrumAccessGameSpec spec;
  spec.topo = std::move(topo);
  spec.propagation = c.propagation;
  spec.monte_carlo_samples = c.monte_carlo_samples;
  spec.monte_carlo_seed = derive_seed(seed, 13);
  return spec;
}

ActionProfile random_profile(const Game& g, std::uint64_t seed) {
  Rng rng(seed);
  ActionProfile p(static_cast<std::size_t>(g.num_players()));
  for (int i = 0; i < g.num_players(); ++i)
    p[static_cast<std::size_t>(i)] =
        static_cast<Action>(rng.index(static_cast<std::uint64_t>(g.num_actions(i))));
  return p;
}

// --- satisfaction ----------------------------------------------------------

void satisfaction_units(const ExperimentConfig& c, const RunOptions& o,
                        std::vector<Unit>& units) {
  for (int n : c.n_cells_values()) {
    for (std::uint64_t seed : c.seeds()) {
      units.push_back({n_label(n), seed, [&c, &o, n, seed] {
        UnitResult out;
        auto topo = make_topology(c, n, 0.0, seed);
        Rng draw(derive_seed(seed, 7));
        std::vector<TrafficClass> traffic;
        for (int i = 0; i < n; ++i) traffic.push_back(c.traffic_classes[draw.index(c.traffic_classes.size())]);
        for (SatisfactionKind kind : c.satisfaction_kinds) {
          SpectrumAccessGameSpec spec = base_spec(c, topo, seed);
          spec.satisfaction_kind = kind;
          spec.traffic = traffic;
          auto game = build_spectrum_game(std::move(spec));
          const RunRecord rec =
              run_sla(*game, c.sla, derive_seed(seed, 11), PayoffNormalizer::from_game(*game));
          const std::string label = n_label(n) + "/" + std::string(to_string(kind));
          const double ratio = satisfied_ratio(rec, *game, c.satisfied_threshold);
          out.samples.push_back({label, "satisfied_ratio", ratio});
          out.samples.push_back({label, "converged", rec.converged() ? 1.0 : 0.0});
          out.samples.push_back({label, "iterations", static_cast<double>(rec.iterations_run())});
          out.runs.push_back(run_line(label, seed, rec, {{"satisfied_ratio", ratio}}, o.keep_traces));
        }
        return out;
      }});
    }
  }
}

// --- association -----------------------------------------------------------

const char* const kLevelMetrics[5] = {"qoe_bad", "qoe_poor", "qoe_fair", "qoe_good",
                                      "qoe_excellent"};

void association_units(const ExperimentConfig& c, const RunOptions& o,
                       std::vector<Unit>& units) {
  for (std::uint64_t seed : c.seeds()) {
    units.push_back({"association", seed, [&c, &o, seed] {
      UnitResult out;
      AssociationLayoutParams lp = c.association;
      lp.seed = seed;
      const SapUserTopology topo = generate_association_topology(lp);
      std::vector<int> gob;
      for (AssociationUtility kind : c.association_utilities) {
        const AssociationGame game({topo, kind});
        const ActionProfile start = random_profile(game, derive_seed(seed, 5));
        const RunRecord rec = run_best_response(game, start, c.best_response, seed);
        const QoeHistogram h = qoe_histogram(rec, game);
        const std::string label(to_string(kind));
        gob.push_back(good_or_better(h));
        out.samples.push_back({label, "good_or_better", static_cast<double>(gob.back())});
        json metrics{{"good_or_better", gob.back()}};
        for (std::size_t l = 0; l < 5; ++l) {
          out.samples.push_back({label, kLevelMetrics[l], static_cast<double>(h[l])});
          metrics[kLevelMetrics[l]] = h[l];
        }
        out.samples.push_back({label, "converged", rec.converged() ? 1.0 : 0.0});
        out.runs.push_back(run_line(label, seed, rec, metrics, o.keep_traces));
      }
      const auto& kinds = c.association_utilities;
      for (std::size_t i = 0; i < kinds.size(); ++i)
        for (std::size_t j = 0; j < kinds.size(); ++j) {
          if (i == j) continue;
          out.samples.push_back({std::string(to_string(kinds[i])) + ">=" +
                                     std::string(to_string(kinds[j])),
                                 "good_or_better_at_least", gob[i] >= gob[j] ? 1.0 : 0.0});
        }
      return out;
    }});
  }
}

// --- hierarchical Q-learning -----------------------------------------------

void hierarchical_units(const ExperimentConfig& c, const RunOptions& o,
                        std::vector<Unit>& units) {
  for (int n : c.n_cells_values()) {
    for (std::uint64_t seed : c.seeds()) {
      units.push_back({n_label(n), seed, [&c, &o, n, seed] {
        UnitResult out;
        auto topo = make_topology(c, n, 0.0, seed);
        auto game = build_spectrum_game(base_spec(c, topo, seed));
        const ActionProfile start = random_profile(*game, derive_seed(seed, 3));
        const RunRecord sim = run_q_learning_simultaneous(*game, start, c.q_learning, seed,
                                                          PayoffNormalizer::from_game(*game));
        const ClusterStructure clusters = cluster_topology(*topo);
        const RunRecord hier = run_hierarchical_q(game, clusters, start, c.q_learning, seed);
        for (const auto* rec : {&sim, &hier}) {
          const std::string label =
              n_label(n) + "/" + (rec == &sim ? "simultaneous" : "hierarchical");
          const double welfare = evaluate_welfare(*game, rec->final_profile, welfare_sum());
          out.samples.push_back(
              {label, "convergence_iterations", static_cast<double>(rec->iterations_run())});
          out.samples.push_back({label, "converged", rec->converged() ? 1.0 : 0.0});
          out.samples.push_back({label, "welfare", welfare});
          json metrics{{"welfare", welfare}};
          if (rec == &hier) {
            out.samples.push_back(
                {label, "clusters", static_cast<double>(clusters.clusters.size())});
            metrics["clusters"] = clusters.clusters.size();
          }
          out.runs.push_back(run_line(label, seed, *rec, metrics, o.keep_traces));
        }
        return out;
      }});
    }
  }
}

// --- robust NE gap -----------------------------------------------------------

std::shared_ptr<const SpectrumAccessGame> robust_game(const ExperimentConfig& c, double lambda,
                                                      std::uint64_t seed) {
  auto topo = make_topology(c, c.topology.n_cells, lambda, seed);
  SpectrumAccessGameSpec spec = base_spec(c, topo, c.fixed_topology ? c.topology.seed : seed);
  spec.robust = true;
  return build_spectrum_game(std::move(spec));
}

void robust_units(const ExperimentConfig& c, const RunOptions& o, std::vector<Unit>& units) {
  const EnumerationOptions eo{kExpectationNeTolerance, c.enumeration_cap, 1};
  for (double lambda : c.active_prob_values()) {
    const std::string label = lambda_label(lambda);
    if (c.fixed_topology) {
      // One game per sweep point, so one oracle.
      units.push_back({label, c.topology.seed, [&c, lambda, label, eo] {
        UnitResult out;
        auto game = robust_game(c, lambda, c.topology.seed);
        const NeGapReport r = ne_gap_report(*game, welfare_sum(), {}, eo);
        if (r.oracle_available) {
          out.baselines.push_back({label, "optimum", r.optimum});
          out.baselines.push_back({label, "best_ne", r.best_ne});
          out.baselines.push_back({label, "worst_ne", r.worst_ne});
          out.baselines.push_back({label, "ne_count", static_cast<double>(r.ne_count)});
        }
        return out;
      }});
    }
    for (std::uint64_t seed : c.seeds()) {
      units.push_back({label, seed, [&c, &o, lambda, label, seed, eo] {
        UnitResult out;
        auto game = robust_game(c, lambda, seed);
        const RunRecord rec =
            run_sla(*game, c.sla, seed, PayoffNormalizer::from_game(*game));
        const double welfare = evaluate_welfare(*game, rec.final_profile, welfare_sum());
        const bool ne = is_pure_ne(*game, rec.final_profile, kExpectationNeTolerance);
        out.samples.push_back({label, "welfare", welfare});
        out.samples.push_back({label, "is_ne", ne ? 1.0 : 0.0});
        out.samples.push_back({label, "converged", rec.converged() ? 1.0 : 0.0});
        out.samples.push_back({label, "iterations", static_cast<double>(rec.iterations_run())});
        if (!c.fixed_topology) {
          // Per-seed topologies: ratio to that topology's own optimum.
          const NeGapReport r = ne_gap_report(*game, welfare_sum(), {}, eo);
          if (r.oracle_available && r.optimum > 0.0) {
            out.samples.push_back({label, "welfare_to_optimum", welfare / r.optimum});
            out.samples.push_back({label, "best_ne_to_optimum", r.best_ne / r.optimum});
            out.samples.push_back({label, "worst_ne_to_optimum", r.worst_ne / r.optimum});
          }
        }
        out.runs.push_back(run_line(label, seed, rec, {{"welfare", welfare}, {"is_ne", ne}},
                                    o.keep_traces));
        return out;
      }});
    }
  }
}

// --- reduction ---------------------------------------------------------------

std::vector<UnitResult> execute(std::vector<Unit>& units, int jobs,
                                std::vector<RunFailure>& failures) {
  std::vector<UnitResult> results(units.size());
  std::vector<std::optional<std::string>> errors(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      try {
        results[i] = units[i].work();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(units.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < units.size(); ++i)
    if (errors[i]) failures.push_back({units[i].config, units[i].seed, *errors[i]});
  return results;
}

PairedTest paired_by_seed(const SummaryEntry& a, const SummaryEntry& b) {
  std::map<std::uint64_t, double> bv;
  for (std::size_t i = 0; i < b.values.size(); ++i) bv[b.seeds[i]] = b.values[i];
  std::vector<double> x, y;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    auto it = bv.find(a.seeds[i]);
    if (it == bv.end()) continue;
    x.push_back(a.values[i]);
    y.push_back(it->second);
  }
  return paired_t_test_greater(x, y);
}

void add_comparison(ExperimentSummary& s, const std::string& config, const std::string& metric,
                    const std::string& a, const std::string& b) {
  const SummaryEntry* ea = s.find(a, metric);
  const SummaryEntry* eb = s.find(b, metric);
  if (!ea || !eb) return;
  try {
    s.comparisons.push_back({config, metric, a + " > " + b, paired_by_seed(*ea, *eb)});
  } catch (const std::invalid_argument&) {
    // Fewer than two paired seeds.
  }
}

std::string dat_line(double x, double y) {
  return format_number(x) + " " + format_number(y) + "\n";
}

void finish(const ExperimentConfig& c, ExperimentResult& r) {
  ExperimentSummary& s = r.summary;
  auto& files = r.data_files;
  switch (c.kind) {
    case ExperimentKind::kSatisfaction: {
      for (int n : c.n_cells_values())
        for (auto a : c.satisfaction_kinds)
          for (auto b : c.satisfaction_kinds)
            if (a != b)
              add_comparison(s, n_label(n), "satisfied_ratio",
                             n_label(n) + "/" + std::string(to_string(a)),
                             n_label(n) + "/" + std::string(to_string(b)));
      for (auto k : c.satisfaction_kinds) {
        std::string text;
        for (int n : c.n_cells_values())
          if (const auto* e = s.find(n_label(n) + "/" + std::string(to_string(k)),
                                     "satisfied_ratio"))
            text += dat_line(n, e->stats.mean);
        files.emplace_back("satisfied_" + std::string(to_string(k)) + ".dat", text);
      }
      s.notes.push_back("satisfied means rate >= satisfied_threshold x demand, for every kind");
      break;
    }
    case ExperimentKind::kAssociationQoe: {
      for (auto a : c.association_utilities)
        for (auto b : c.association_utilities)
          if (a != b)
            add_comparison(s, "all", "good_or_better", std::string(to_string(a)),
                           std::string(to_string(b)));
      for (auto k : c.association_utilities) {
        std::string text;
        for (int l = 0; l < 5; ++l)
          if (const auto* e = s.find(std::string(to_string(k)), kLevelMetrics[l]))
            text += dat_line(l + 1, e->stats.mean);
        files.emplace_back("qoe_" + std::string(to_string(k)) + ".dat", text);
      }
      s.notes.push_back("QoE histograms cover every user, fixed and flexible");
      break;
    }
    case ExperimentKind::kHierarchicalQ: {
      for (int n : c.n_cells_values()) {
        add_comparison(s, n_label(n), "convergence_iterations", n_label(n) + "/simultaneous",
                       n_label(n) + "/hierarchical");
        for (const char* alg : {"simultaneous", "hierarchical"}) {
          const std::string label = n_label(n) + "/" + alg;
          const auto* its = s.find(label, "convergence_iterations");
          const auto* conv = s.find(label, "converged");
          if (!its || !conv) continue;
          std::vector<std::optional<int>> v;
          for (std::size_t i = 0; i < its->values.size(); ++i)
            v.push_back(conv->values[i] > 0.5 ? std::optional<int>(static_cast<int>(its->values[i]))
                                              : std::nullopt);
          CdfSeries series{label, convergence_cdf(v)};
          std::string text;
          for (const auto& p : series.points) text += dat_line(p.iterations, p.fraction);
          files.emplace_back("cdf_n" + std::to_string(n) + "_" + alg + ".dat", text);
          s.cdfs.push_back(std::move(series));
        }
      }
      s.notes.push_back(
          "convergence_iterations of a run that never converged is its full length");
      break;
    }
    case ExperimentKind::kRobustNeGap: {
      for (const char* name : {"optimum", "best_ne", "worst_ne"}) {
        std::string text;
        for (double lambda : c.active_prob_values())
          if (auto v = s.baseline(lambda_label(lambda), name)) text += dat_line(lambda, *v);
        if (!text.empty()) files.emplace_back(std::string("welfare_") + name + ".dat", text);
      }
      std::string text;
      for (double lambda : c.active_prob_values())
        if (const auto* e = s.find(lambda_label(lambda), "welfare"))
          text += dat_line(lambda, e->stats.mean);
      files.emplace_back("welfare_sla.dat", text);
      if (c.fixed_topology && s.baselines.empty())
        s.notes.push_back("profile space above enumeration_cap: no oracle baselines");
      s.notes.push_back("welfare is the sum of expected Shannon capacities (bit/s)");
      break;
    }
  }
  for (const auto& e : s.entries)
    if (e.stats.ci_insufficient) {
      s.notes.push_back("confidence intervals from fewer than " +
                        std::to_string(kMinSamplesForCi) + " seeds are flagged insufficient");
      break;
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string lambda_label(double lambda) { return "lambda=" + format_number(lambda); }
std::string n_label(int n) { return "n=" + std::to_string(n); }

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  std::vector<Unit> units;
  switch (config.kind) {
    case ExperimentKind::kSatisfaction: satisfaction_units(config, options, units); break;
    case ExperimentKind::kAssociationQoe: association_units(config, options, units); break;
    case ExperimentKind::kHierarchicalQ: hierarchical_units(config, options, units); break;
    case ExperimentKind::kRobustNeGap: robust_units(config, options, units); break;
  }

  ExperimentResult result;
  ExperimentSummary& s = result.summary;
  s.experiment = config.name;
  s.version = kVersion;
  s.config_digest = config_digest(config);
  std::vector<UnitResult> parts = execute(units, options.jobs, s.failures);

  // Fixed-order reduction: unit order, then sample order within a unit.
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t u = 0; u < parts.size(); ++u) {
    for (const auto& sample : parts[u].samples) {
      auto key = std::make_pair(sample.config, sample.metric);
      auto [it, fresh] = index.try_emplace(key, s.entries.size());
      if (fresh) s.entries.push_back({sample.config, sample.metric, {}, {}, {}});
      auto& e = s.entries[it->second];
      e.seeds.push_back(units[u].seed);
      e.values.push_back(sample.value);
    }
    for (auto& b : parts[u].baselines) s.baselines.push_back(std::move(b));
    for (auto& line : parts[u].runs) result.runs.push_back(std::move(line));
  }
  for (auto& e : s.entries) e.stats = aggregate(e.values);
  finish(config, result);
  return result;
}

std::string summary_file_text(const ExperimentSummary& summary) {
  return summary_to_json(summary).dump(2) + "\n";
}

void write_artifacts(const ExperimentConfig& config, const ExperimentResult& result,
                     const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "runs");
  fs::create_directories(dir / "data");
  write_text(dir / "config.echo.json", config_echo(config).dump(2) + "\n");
  std::string lines;
  for (const auto& r : result.runs) lines += r.dump() + "\n";
  write_text(dir / "runs" / "runs.jsonl", lines);
  write_text(dir / "summary.json", summary_file_text(result.summary));
  write_text(dir / "summary.csv", summary_to_csv(result.summary));
  for (const auto& [name, text] : result.data_files) write_text(dir / "data" / name, text);
}

ExperimentResult run_and_persist(const ExperimentConfig& config, const RunOptions& options) {
  ExperimentResult result = run_experiment(config, options);
  if (!config.output_dir.empty()) write_artifacts(config, result, config.output_dir);
  return result;
}

ExperimentSummary load_summary(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  const fs::path file = fs::is_directory(path) ? path / "summary.json" : path;
  std::ifstream in(file);
  if (!in) throw ConfigError({"results"}, "cannot read " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({"results"}, file.string() + " is not JSON: " + e.what());
  }
  return summary_from_json(doc);
}

}  // namespace csc
