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
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "csc/errors.hpp"

namespace csc {
namespace {

using nlohmann::json;

std::string_view to_string(Schedule s) {
  return s == Schedule::kRoundRobin ? "round_robin" : "random";
}

// Collects every malformed field instead of stopping at the first.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& bad) : bad_(bad) {}

  // Rejects keys outside `allowed`; false if `doc` is not an object.
  bool object(const json& doc, const std::string& path,
              std::initializer_list<std::string_view> allowed) {
    if (!doc.is_object()) {
      bad_.push_back(path);
      return false;
    }
    for (const auto& [key, _] : doc.items()) {
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) bad_.push_back(join(path, key));
    }
    return true;
  }

  template <typename T>
  void get(const json& doc, const std::string& path, const char* key, T& out) {
    if (!doc.contains(key)) return;
    const json& v = doc[key];
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw std::invalid_argument(key);
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw std::invalid_argument(key);
        if constexpr (std::is_unsigned_v<T>)
          if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
            throw std::invalid_argument(key);
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw std::invalid_argument(key);
      }
      out = v.get<T>();
    } catch (const std::exception&) {
      bad_.push_back(join(path, key));
    }
  }

  static std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  }

 private:
  std::vector<std::string>& bad_;
};

json traffic_list_to_json(const std::vector<TrafficClass>& list) {
  json out = json::array();
  for (const auto& tc : list) out.push_back(traffic_class_to_json(tc));
  return out;
}

std::vector<TrafficClass> traffic_list_from_json(const json& doc, const std::string& path,
                                                 std::vector<std::string>& bad) {
  std::vector<TrafficClass> out;
  if (!doc.is_array()) {
    bad.push_back(path);
    return out;
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    try {
      out.push_back(traffic_class_from_json(doc[i], p));
    } catch (const ConfigError& e) {
      bad.insert(bad.end(), e.fields().begin(), e.fields().end());
    }
  }
  return out;
}

template <typename E, typename F>
std::vector<E> enum_list_from_json(const json& doc, const std::string& path, F parse,
                                   std::vector<std::string>& bad) {
  std::vector<E> out;
  if (!doc.is_array()) {
    bad.push_back(path);
    return out;
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      out.push_back(parse(doc[i].template get<std::string>()));
    } catch (const std::exception&) {
      bad.push_back(path + "[" + std::to_string(i) + "]");
    }
  }
  return out;
}

void check_probs(const std::vector<double>& ps, const std::string& path,
                 std::vector<std::string>& bad) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!(ps[i] > 0.0 && ps[i] <= 1.0)) bad.push_back(path + "[" + std::to_string(i) + "]");
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSatisfaction: return "satisfaction";
    case ExperimentKind::kAssociationQoe: return "association_qoe";
    case ExperimentKind::kHierarchicalQ: return "hierarchical_q";
    case ExperimentKind::kRobustNeGap: return "robust_ne_gap";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::kSatisfaction, ExperimentKind::kAssociationQoe,
                 ExperimentKind::kHierarchicalQ, ExperimentKind::kRobustNeGap})
    if (to_string(k) == name) return k;
  throw ConfigError({"kind"}, "unknown experiment kind '" + std::string(name) + "'");
}

std::vector<std::uint64_t> ExperimentConfig::seeds() const {
  if (!seed_list.empty()) return seed_list;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < replications; ++i) out.push_back(base_seed + static_cast<std::uint64_t>(i));
  return out;
}

std::vector<int> ExperimentConfig::n_cells_values() const {
  return sweep_n_cells.empty() ? std::vector<int>{topology.n_cells} : sweep_n_cells;
}

std::vector<double> ExperimentConfig::active_prob_values() const {
  return sweep_active_prob.empty() ? std::vector<double>{topology.active_prob.front()}
                                   : sweep_active_prob;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  // The JSON form carries every field.
  return config_to_json(a) == config_to_json(b);
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> bad;
  if (c.name.empty()) bad.push_back("name");
  if (c.seed_list.empty() && c.replications < 1) bad.push_back("seeds.replications");
  {
    std::set<std::uint64_t> uniq(c.seed_list.begin(), c.seed_list.end());
    if (uniq.size() != c.seed_list.size()) bad.push_back("seeds.list");
  }
  const auto& t = c.topology;
  if (t.n_cells < 1) bad.push_back("topology.n_cells");
  if (!(t.region.width > 0.0)) bad.push_back("topology.region.width");
  if (!(t.region.height > 0.0)) bad.push_back("topology.region.height");
  if (!(t.interference_radius_m > 0.0)) bad.push_back("topology.interference_radius_m");
  if (t.n_channels < 1) bad.push_back("topology.n_channels");
  if (!(t.bandwidth_hz > 0.0)) bad.push_back("topology.bandwidth_hz");
  if (t.active_prob.empty() ||
      (t.active_prob.size() != 1 && t.active_prob.size() != static_cast<std::size_t>(t.n_cells)))
    bad.push_back("topology.active_prob");
  check_probs(t.active_prob, "topology.active_prob", bad);
  for (std::size_t i = 0; i < c.sweep_n_cells.size(); ++i)
    if (c.sweep_n_cells[i] < 1) bad.push_back("sweep.n_cells[" + std::to_string(i) + "]");
  check_probs(c.sweep_active_prob, "sweep.active_prob", bad);
  if (!c.sweep_active_prob.empty() && t.active_prob.size() != 1)
    bad.push_back("topology.active_prob");
  if (!(c.propagation.pathloss_exponent > 0.0)) bad.push_back("propagation.pathloss_exponent");
  if (!(c.propagation.serving_distance_m > 0.0))
    bad.push_back("propagation.serving_distance_m");
  for (std::size_t i = 0; i < c.traffic_classes.size(); ++i) {
    try {
      validate(c.traffic_classes[i], "traffic_classes[" + std::to_string(i) + "]");
    } catch (const ConfigError& e) {
      bad.insert(bad.end(), e.fields().begin(), e.fields().end());
    }
  }
  const auto& a = c.association;
  if (a.sap_rows < 1) bad.push_back("association.sap_rows");
  if (a.sap_cols < 1) bad.push_back("association.sap_cols");
  if (!(a.sap_capacity_bps > 0.0)) bad.push_back("association.sap_capacity_bps");
  if (a.fixed_users < 0) bad.push_back("association.fixed_users");
  if (a.flexible_users < 0) bad.push_back("association.flexible_users");
  if (a.classes.empty()) bad.push_back("association.classes");
  if (c.sla.horizon < 1) bad.push_back("sla.horizon");
  if (!(c.sla.step > 0.0 && c.sla.step <= 1.0)) bad.push_back("sla.step");
  if (!(c.sla.convergence_threshold > 0.0 && c.sla.convergence_threshold <= 1.0))
    bad.push_back("sla.convergence_threshold");
  if (c.best_response.horizon < 1) bad.push_back("best_response.horizon");
  if (!(c.best_response.tolerance >= 0.0)) bad.push_back("best_response.tolerance");
  const auto& q = c.q_learning;
  if (q.horizon < 1) bad.push_back("q_learning.horizon");
  if (!(q.alpha > 0.0 && q.alpha <= 1.0)) bad.push_back("q_learning.alpha");
  if (!(q.epsilon0 >= 0.0 && q.epsilon0 <= 1.0)) bad.push_back("q_learning.epsilon0");
  if (!(q.tau > 0.0)) bad.push_back("q_learning.tau");
  if (q.window < 1) bad.push_back("q_learning.window");
  if (!(c.satisfied_threshold >= 0.0 && c.satisfied_threshold <= 1.0))
    bad.push_back("satisfied_threshold");
  if (c.monte_carlo_samples < 1) bad.push_back("monte_carlo_samples");
  if (!(c.enumeration_cap >= 1.0)) bad.push_back("enumeration_cap");

  switch (c.kind) {
    case ExperimentKind::kSatisfaction:
      if (c.traffic_classes.empty()) bad.push_back("traffic_classes");
      if (c.satisfaction_kinds.empty()) bad.push_back("satisfaction_kinds");
      break;
    case ExperimentKind::kAssociationQoe:
      if (c.association_utilities.empty()) bad.push_back("association_utilities");
      if (a.sap_rows * a.sap_cols < 2 && a.flexible_users > 0)
        bad.push_back("association.sap_cols");
      break;
    case ExperimentKind::kHierarchicalQ:
      break;
    case ExperimentKind::kRobustNeGap:
      break;
  }
  if (!bad.empty()) {
    std::string msg = "invalid experiment configuration:";
    for (const auto& f : bad) msg += " " + f;
    throw ConfigError(std::move(bad), msg);
  }
}

json config_to_json(const ExperimentConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["kind"] = to_string(c.kind);
  doc["seeds"] = {
      {"base", c.base_seed}, {"replications", c.replications}, {"list", c.seed_list}};
  doc["output_dir"] = c.output_dir;
  const auto& t = c.topology;
  doc["topology"] = {{"seed", t.seed},
                     {"n_cells", t.n_cells},
                     {"region", {{"width", t.region.width}, {"height", t.region.height}}},
                     {"interference_radius_m", t.interference_radius_m},
                     {"n_channels", t.n_channels},
                     {"bandwidth_hz", t.bandwidth_hz},
                     {"tx_power_dbm", t.tx_power_dbm},
                     {"active_prob", t.active_prob}};
  doc["fixed_topology"] = c.fixed_topology;
  doc["sweep"] = {{"n_cells", c.sweep_n_cells}, {"active_prob", c.sweep_active_prob}};
  doc["propagation"] = {{"noise_dbm", c.propagation.noise_dbm},
                        {"pathloss_exponent", c.propagation.pathloss_exponent},
                        {"serving_distance_m", c.propagation.serving_distance_m}};
  doc["traffic_classes"] = traffic_list_to_json(c.traffic_classes);
  json kinds = json::array();
  for (auto k : c.satisfaction_kinds) kinds.push_back(to_string(k));
  doc["satisfaction_kinds"] = kinds;
  const auto& a = c.association;
  doc["association"] = {{"sap_rows", a.sap_rows},
                        {"sap_cols", a.sap_cols},
                        {"sap_capacity_bps", a.sap_capacity_bps},
                        {"fixed_users", a.fixed_users},
                        {"flexible_users", a.flexible_users},
                        {"classes", traffic_list_to_json(a.classes)}};
  json utils = json::array();
  for (auto u : c.association_utilities) utils.push_back(to_string(u));
  doc["association_utilities"] = utils;
  doc["sla"] = {{"horizon", c.sla.horizon},
                {"step", c.sla.step},
                {"convergence_threshold", c.sla.convergence_threshold}};
  doc["best_response"] = {{"horizon", c.best_response.horizon},
                          {"schedule", to_string(c.best_response.schedule)},
                          {"tolerance", c.best_response.tolerance}};
  const auto& q = c.q_learning;
  doc["q_learning"] = {{"horizon", q.horizon}, {"alpha", q.alpha},
                       {"epsilon0", q.epsilon0}, {"tau", q.tau},
                       {"window", q.window}};
  doc["satisfied_threshold"] = c.satisfied_threshold;
  doc["monte_carlo_samples"] = c.monte_carlo_samples;
  doc["enumeration_cap"] = c.enumeration_cap;
  return doc;
}

ExperimentConfig config_from_json(const json& doc) {
  std::vector<std::string> bad;
  Reader r(bad);
  ExperimentConfig c;
  if (!r.object(doc, "", {"name", "kind", "seeds", "output_dir", "topology",
                          "fixed_topology", "sweep", "propagation", "traffic_classes",
                          "satisfaction_kinds", "association", "association_utilities",
                          "sla", "best_response", "q_learning", "satisfied_threshold",
                          "monte_carlo_samples", "enumeration_cap"}))
    throw ConfigError({"config"}, "configuration must be a JSON object");

  if (!doc.contains("name")) bad.push_back("name");
  r.get(doc, "", "name", c.name);
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    bad.push_back("kind");
  } else {
    try {
      c.kind = experiment_kind_from_string(doc["kind"].get<std::string>());
    } catch (const ConfigError&) {
      bad.push_back("kind");
    }
  }
  if (doc.contains("seeds") && r.object(doc["seeds"], "seeds", {"base", "replications", "list"})) {
    const json& s = doc["seeds"];
    r.get(s, "seeds", "base", c.base_seed);
    r.get(s, "seeds", "replications", c.replications);
    r.get(s, "seeds", "list", c.seed_list);
  }
  r.get(doc, "", "output_dir", c.output_dir);

  if (doc.contains("topology") &&
      r.object(doc["topology"], "topology",
               {"seed", "n_cells", "region", "interference_radius_m", "n_channels",
                "bandwidth_hz", "tx_power_dbm", "active_prob"})) {
    const json& t = doc["topology"];
    r.get(t, "topology", "seed", c.topology.seed);
    r.get(t, "topology", "n_cells", c.topology.n_cells);
    if (t.contains("region") &&
        r.object(t["region"], "topology.region", {"width", "height"})) {
      r.get(t["region"], "topology.region", "width", c.topology.region.width);
      r.get(t["region"], "topology.region", "height", c.topology.region.height);
    }
    r.get(t, "topology", "interference_radius_m", c.topology.interference_radius_m);
    r.get(t, "topology", "n_channels", c.topology.n_channels);
    r.get(t, "topology", "bandwidth_hz", c.topology.bandwidth_hz);
    r.get(t, "topology", "tx_power_dbm", c.topology.tx_power_dbm);
    r.get(t, "topology", "active_prob", c.topology.active_prob);
  }
  r.get(doc, "", "fixed_topology", c.fixed_topology);
  if (doc.contains("sweep") && r.object(doc["sweep"], "sweep", {"n_cells", "active_prob"})) {
    r.get(doc["sweep"], "sweep", "n_cells", c.sweep_n_cells);
    r.get(doc["sweep"], "sweep", "active_prob", c.sweep_active_prob);
  }
  if (doc.contains("propagation") &&
      r.object(doc["propagation"], "propagation",
               {"noise_dbm", "pathloss_exponent", "serving_distance_m"})) {
    const json& p = doc["propagation"];
    r.get(p, "propagation", "noise_dbm", c.propagation.noise_dbm);
    r.get(p, "propagation", "pathloss_exponent", c.propagation.pathloss_exponent);
    r.get(p, "propagation", "serving_distance_m", c.propagation.serving_distance_m);
  }
  if (doc.contains("traffic_classes"))
    c.traffic_classes = traffic_list_from_json(doc["traffic_classes"], "traffic_classes", bad);
  if (doc.contains("satisfaction_kinds"))
    c.satisfaction_kinds = enum_list_from_json<SatisfactionKind>(
        doc["satisfaction_kinds"], "satisfaction_kinds",
        [](const std::string& s) { return satisfaction_kind_from_string(s); }, bad);
  if (doc.contains("association") &&
      r.object(doc["association"], "association",
               {"sap_rows", "sap_cols", "sap_capacity_bps", "fixed_users", "flexible_users",
                "classes"})) {
    const json& a = doc["association"];
    r.get(a, "association", "sap_rows", c.association.sap_rows);
    r.get(a, "association", "sap_cols", c.association.sap_cols);
    r.get(a, "association", "sap_capacity_bps", c.association.sap_capacity_bps);
    r.get(a, "association", "fixed_users", c.association.fixed_users);
    r.get(a, "association", "flexible_users", c.association.flexible_users);
    if (a.contains("classes"))
      c.association.classes = traffic_list_from_json(a["classes"], "association.classes", bad);
  }
  if (doc.contains("association_utilities"))
    c.association_utilities = enum_list_from_json<AssociationUtility>(
        doc["association_utilities"], "association_utilities",
        [](const std::string& s) { return association_utility_from_string(s); }, bad);
  if (doc.contains("sla") &&
      r.object(doc["sla"], "sla", {"horizon", "step", "convergence_threshold"})) {
    r.get(doc["sla"], "sla", "horizon", c.sla.horizon);
    r.get(doc["sla"], "sla", "step", c.sla.step);
    r.get(doc["sla"], "sla", "convergence_threshold", c.sla.convergence_threshold);
  }
  if (doc.contains("best_response") &&
      r.object(doc["best_response"], "best_response", {"horizon", "schedule", "tolerance"})) {
    const json& b = doc["best_response"];
    r.get(b, "best_response", "horizon", c.best_response.horizon);
    r.get(b, "best_response", "tolerance", c.best_response.tolerance);
    if (b.contains("schedule")) {
      const json& s = b["schedule"];
      if (s == "round_robin")
        c.best_response.schedule = Schedule::kRoundRobin;
      else if (s == "random")
        c.best_response.schedule = Schedule::kRandom;
      else
        bad.push_back("best_response.schedule");
    }
  }
  if (doc.contains("q_learning") &&
      r.object(doc["q_learning"], "q_learning",
               {"horizon", "alpha", "epsilon0", "tau", "window"})) {
    const json& q = doc["q_learning"];
    r.get(q, "q_learning", "horizon", c.q_learning.horizon);
    r.get(q, "q_learning", "alpha", c.q_learning.alpha);
    r.get(q, "q_learning", "epsilon0", c.q_learning.epsilon0);
    r.get(q, "q_learning", "tau", c.q_learning.tau);
    r.get(q, "q_learning", "window", c.q_learning.window);
  }
  r.get(doc, "", "satisfied_threshold", c.satisfied_threshold);
  r.get(doc, "", "monte_carlo_samples", c.monte_carlo_samples);
  r.get(doc, "", "enumeration_cap", c.enumeration_cap);

  // Range checks run too, so one pass reports everything.
  try {
    validate(c);
  } catch (const ConfigError& e) {
    for (const auto& f : e.fields())
      if (std::find(bad.begin(), bad.end(), f) == bad.end()) bad.push_back(f);
  }
  if (!bad.empty()) {
    std::string msg = "invalid experiment configuration:";
    for (const auto& f : bad) msg += " " + f;
    throw ConfigError(std::move(bad), msg);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config"}, "cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({"config"}, "config file " + path.string() + " is not JSON: " + e.what());
  }
  return config_from_json(doc);
}

json config_echo(const ExperimentConfig& c) {
  json doc = config_to_json(c);
  doc.erase("output_dir");
  return doc;
}

std::string config_digest(const ExperimentConfig& c) {
  const std::string text = config_echo(c).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace csc
