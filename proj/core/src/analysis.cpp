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

#include "csc/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "csc/errors.hpp"

namespace csc {
namespace {

using nlohmann::json;

// JSON has no infinities; they travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

json aggregate_to_json(const Aggregate& a) {
  return json{{"n", a.n},           {"mean", num(a.mean)},   {"median", num(a.median)},
              {"sd", num(a.sd)},    {"ci_lo", num(a.ci_lo)}, {"ci_hi", num(a.ci_hi)},
              {"ci_insufficient", a.ci_insufficient}};
}

Aggregate aggregate_from_json(const json& j) {
  Aggregate a;
  a.n = j.at("n").get<std::size_t>();
  a.mean = num_from(j.at("mean"));
  a.median = num_from(j.at("median"));
  a.sd = num_from(j.at("sd"));
  a.ci_lo = num_from(j.at("ci_lo"));
  a.ci_hi = num_from(j.at("ci_hi"));
  a.ci_insufficient = j.at("ci_insufficient").get<bool>();
  return a;
}

std::string short_number(double v) {
  if (!std::isfinite(v)) return format_number(v);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

// Left-aligned first column, right-aligned rest.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return {};
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string pad(width[c] - r[c].size(), ' ');
      if (c) out += "  ";
      out += c == 0 ? r[c] + pad : pad + r[c];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool in_family(std::string_view metric, std::string_view family) {
  if (family == "satisfied") return starts_with(metric, "satisfied");
  if (family == "qoe") return starts_with(metric, "qoe_") || metric == "good_or_better";
  if (family == "convergence")
    return starts_with(metric, "convergence") || starts_with(metric, "converged");
  if (family == "ne-gap") return metric == "welfare";
  return false;
}

std::string aggregate_table(const ExperimentSummary& s, std::string_view family) {
  std::vector<std::vector<std::string>> rows{
      {"config", "metric", "n", "mean", "median", "sd", "ci_lo", "ci_hi", "ci"}};
  for (const auto& e : s.entries) {
    if (!in_family(e.metric, family)) continue;
    const auto& a = e.stats;
    rows.push_back({e.config, e.metric, std::to_string(a.n), short_number(a.mean),
                    short_number(a.median), short_number(a.sd), short_number(a.ci_lo),
                    short_number(a.ci_hi), a.ci_insufficient ? "insufficient" : "ok"});
  }
  std::string out = render_table(rows);
  std::vector<std::vector<std::string>> cmp{
      {"config", "comparison", "n", "mean_diff", "t", "p_one_sided"}};
  for (const auto& c : s.comparisons) {
    if (!in_family(c.metric, family)) continue;
    cmp.push_back({c.config, c.name, std::to_string(c.test.n),
                   short_number(c.test.mean_difference), short_number(c.test.t),
                   short_number(c.test.p_value)});
  }
  if (cmp.size() > 1) out += "\n" + render_table(cmp);
  return out;
}

std::string ne_gap_table(const ExperimentSummary& s) {
  std::vector<std::string> configs;
  auto note = [&](const std::string& c) {
    if (std::find(configs.begin(), configs.end(), c) == configs.end()) configs.push_back(c);
  };
  for (const auto& b : s.baselines)
    if (b.name == "optimum") note(b.config);
  for (const auto& e : s.entries)
    if (e.metric == "welfare") note(e.config);

  std::vector<std::vector<std::string>> rows{{"config", "optimum", "best_ne", "worst_ne",
                                              "learned_mean", "learned/opt", "best/opt",
                                              "worst/opt", "n"}};
  auto cell = [](std::optional<double> v) { return v ? short_number(*v) : "n/a"; };
  auto ratio = [](std::optional<double> a, std::optional<double> b) -> std::string {
    if (!a || !b || *b == 0.0) return "n/a";
    return short_number(*a / *b);
  };
  for (const auto& c : configs) {
    const auto opt = s.baseline(c, "optimum");
    const auto best = s.baseline(c, "best_ne");
    const auto worst = s.baseline(c, "worst_ne");
    const SummaryEntry* learned = s.find(c, "welfare");
    std::optional<double> mean;
    if (learned) mean = learned->stats.mean;
    rows.push_back({c, cell(opt), cell(best), cell(worst), cell(mean), ratio(mean, opt),
                    ratio(best, opt), ratio(worst, opt),
                    learned ? std::to_string(learned->stats.n) : "0"});
  }
  return render_table(rows);
}

}  // namespace

double satisfied_ratio(std::span<const double> rates, std::span<const TrafficClass> traffic,
                       double threshold) {
  if (rates.size() != traffic.size())
    throw std::invalid_argument("satisfied_ratio: rates and traffic differ in length");
  if (rates.empty()) return 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < rates.size(); ++i)
    if (satisfaction_linear(rates[i], traffic[i].demand_bps) >= threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(rates.size());
}

double satisfied_ratio(const RunRecord& record, const SpectrumAccessGame& game,
                       double threshold) {
  if (record.final_profile.empty())
    throw ContractViolation("satisfied_ratio: record has no final profile");
  if (game.spec().traffic.size() != static_cast<std::size_t>(game.num_players()))
    throw ConfigError({"traffic"}, "satisfied_ratio needs one traffic class per cell");
  const auto rates = game.rates(record.final_profile);
  return satisfied_ratio(rates, game.spec().traffic, threshold);
}

QoeHistogram qoe_histogram(std::span<const QoeLevel> levels) {
  QoeHistogram h{};
  for (QoeLevel l : levels) ++h[static_cast<std::size_t>(ordinal(l) - 1)];
  return h;
}

QoeHistogram qoe_histogram(const RunRecord& record, const AssociationGame& game) {
  if (record.final_profile.empty())
    throw ContractViolation("qoe_histogram: record has no final profile");
  return qoe_histogram(game.user_levels(record.final_profile));
}

int good_or_better(const QoeHistogram& h) {
  return h[static_cast<std::size_t>(ordinal(QoeLevel::kGood) - 1)] +
         h[static_cast<std::size_t>(ordinal(QoeLevel::kExcellent) - 1)];
}

std::vector<CdfPoint> convergence_cdf(std::span<const std::optional<int>> iterations) {
  if (iterations.empty()) throw std::invalid_argument("convergence_cdf of no runs");
  std::vector<int> done;
  for (const auto& it : iterations)
    if (it) done.push_back(*it);
  std::sort(done.begin(), done.end());
  const double total = static_cast<double>(iterations.size());
  std::vector<CdfPoint> cdf;
  for (std::size_t i = 0; i < done.size(); ++i) {
    if (i + 1 < done.size() && done[i + 1] == done[i]) continue;
    cdf.push_back({static_cast<double>(done[i]), static_cast<double>(i + 1) / total});
  }
  return cdf;
}

std::vector<CdfPoint> convergence_cdf(std::span<const RunRecord> records) {
  std::vector<std::optional<int>> its;
  its.reserve(records.size());
  for (const auto& r : records)
    its.push_back(r.converged() ? std::optional<int>(r.iterations_run()) : std::nullopt);
  return convergence_cdf(its);
}

NeGapReport ne_gap_report(const Game& game, const Welfare& welfare,
                          std::span<const double> learned,
                          const EnumerationOptions& options) {
  NeGapReport report;
  report.learned.assign(learned.begin(), learned.end());
  try {
    const auto opt = exhaustive_optimum(game, welfare, options);
    const auto ne = enumerate_pure_ne(game, options);
    report.optimum = opt.welfare;
    report.optimum_profile = opt.profile;
    report.ne_count = ne.size();
    if (!ne.empty()) {
      report.best_ne = -std::numeric_limits<double>::infinity();
      report.worst_ne = std::numeric_limits<double>::infinity();
      for (const auto& p : ne) {
        const double w = evaluate_welfare(game, p, welfare);
        report.best_ne = std::max(report.best_ne, w);
        report.worst_ne = std::min(report.worst_ne, w);
      }
    }
    report.oracle_available = true;
  } catch (const CapacityError&) {
    report.oracle_available = false;
  }
  return report;
}

const SummaryEntry* ExperimentSummary::find(std::string_view config,
                                            std::string_view metric) const {
  for (const auto& e : entries)
    if (e.config == config && e.metric == metric) return &e;
  return nullptr;
}

std::optional<double> ExperimentSummary::baseline(std::string_view config,
                                                  std::string_view name) const {
  for (const auto& b : baselines)
    if (b.config == config && b.name == name) return b.value;
  return std::nullopt;
}

const Comparison* ExperimentSummary::comparison(std::string_view config,
                                                std::string_view name) const {
  for (const auto& c : comparisons)
    if (c.config == config && c.name == name) return &c;
  return nullptr;
}

json summary_to_json(const ExperimentSummary& s) {
  json doc;
  doc["experiment"] = s.experiment;
  doc["version"] = s.version;
  doc["config_digest"] = s.config_digest;
  json entries = json::array();
  for (const auto& e : s.entries) {
    json values = json::array();
    for (double v : e.values) values.push_back(num(v));
    entries.push_back({{"config", e.config},
                       {"metric", e.metric},
                       {"stats", aggregate_to_json(e.stats)},
                       {"seeds", e.seeds},
                       {"values", values}});
  }
  doc["entries"] = entries;
  json baselines = json::array();
  for (const auto& b : s.baselines)
    baselines.push_back({{"config", b.config}, {"name", b.name}, {"value", num(b.value)}});
  doc["baselines"] = baselines;
  json comparisons = json::array();
  for (const auto& c : s.comparisons)
    comparisons.push_back({{"config", c.config},
                           {"metric", c.metric},
                           {"name", c.name},
                           {"n", c.test.n},
                           {"mean_difference", num(c.test.mean_difference)},
                           {"t", num(c.test.t)},
                           {"p_value", num(c.test.p_value)}});
  doc["comparisons"] = comparisons;
  json cdfs = json::array();
  for (const auto& c : s.cdfs) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({p.iterations, p.fraction});
    cdfs.push_back({{"config", c.config}, {"points", pts}});
  }
  doc["cdfs"] = cdfs;
  json failures = json::array();
  for (const auto& f : s.failures)
    failures.push_back({{"config", f.config}, {"seed", f.seed}, {"message", f.message}});
  doc["failures"] = failures;
  doc["notes"] = s.notes;
  return doc;
}

ExperimentSummary summary_from_json(const json& doc) {
  try {
    ExperimentSummary s;
    s.experiment = doc.at("experiment").get<std::string>();
    s.version = doc.at("version").get<std::string>();
    s.config_digest = doc.at("config_digest").get<std::string>();
    for (const auto& e : doc.at("entries")) {
      SummaryEntry entry;
      entry.config = e.at("config").get<std::string>();
      entry.metric = e.at("metric").get<std::string>();
      entry.stats = aggregate_from_json(e.at("stats"));
      entry.seeds = e.at("seeds").get<std::vector<std::uint64_t>>();
      for (const auto& v : e.at("values")) entry.values.push_back(num_from(v));
      s.entries.push_back(std::move(entry));
    }
    for (const auto& b : doc.at("baselines"))
      s.baselines.push_back({b.at("config").get<std::string>(),
                             b.at("name").get<std::string>(), num_from(b.at("value"))});
    for (const auto& c : doc.at("comparisons")) {
      Comparison cmp;
      cmp.config = c.at("config").get<std::string>();
      cmp.metric = c.at("metric").get<std::string>();
      cmp.name = c.at("name").get<std::string>();
      cmp.test.n = c.at("n").get<std::size_t>();
      cmp.test.mean_difference = num_from(c.at("mean_difference"));
      cmp.test.t = num_from(c.at("t"));
      cmp.test.p_value = num_from(c.at("p_value"));
      s.comparisons.push_back(std::move(cmp));
    }
    for (const auto& c : doc.at("cdfs")) {
      CdfSeries series;
      series.config = c.at("config").get<std::string>();
      for (const auto& p : c.at("points"))
        series.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      s.cdfs.push_back(std::move(series));
    }
    for (const auto& f : doc.at("failures"))
      s.failures.push_back({f.at("config").get<std::string>(),
                            f.at("seed").get<std::uint64_t>(),
                            f.at("message").get<std::string>()});
    s.notes = doc.at("notes").get<std::vector<std::string>>();
    return s;
  } catch (const json::exception& e) {
    throw ConfigError({"summary"}, std::string("malformed summary: ") + e.what());
  }
}

std::string summary_to_csv(const ExperimentSummary& s) {
  std::string out = "experiment,config,metric,seed,value\n";
  for (const auto& e : s.entries)
    for (std::size_t i = 0; i < e.values.size(); ++i) {
      out += s.experiment + "," + e.config + "," + e.metric + ",";
      out += i < e.seeds.size() ? std::to_string(e.seeds[i]) : "";
      out += "," + format_number(e.values[i]) + "\n";
    }
  return out;
}

std::string format_report(const ExperimentSummary& s, std::string_view metric) {
  if (std::find(kReportMetrics.begin(), kReportMetrics.end(), metric) ==
      kReportMetrics.end())
    throw ConfigError({"metric"}, "unknown report metric: " + std::string(metric));
  std::string out = "# " + s.experiment + " " + std::string(metric) + " (version " +
                    s.version + ", config " + s.config_digest + ")\n";
  out += metric == "ne-gap" ? ne_gap_table(s) : aggregate_table(s, metric);
  if (!s.failures.empty())
    out += "\n" + std::to_string(s.failures.size()) + " failed run(s)\n";
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json run_record_to_json(const RunRecord& r, bool include_trace) {
  json doc{{"algorithm", r.algorithm},
           {"seed", r.seed},
           {"horizon", r.horizon},
           {"iterations_run", r.iterations_run()},
           {"converged_at", r.converged_at ? json(*r.converged_at) : json(nullptr)},
           {"final_profile", r.final_profile},
           {"moves", r.moves},
           {"stage_iterations", r.stage_iterations}};
  if (include_trace) {
    json trace = json::array();
    for (const auto& it : r.iterations) {
      json payoffs = json::array();
      for (double p : it.payoffs) payoffs.push_back(num(p));
      trace.push_back({{"profile", it.profile}, {"payoffs", payoffs}});
    }
    doc["trace"] = trace;
  }
  return doc;
}

}  // namespace csc
