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

#include "csc/utility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csc/errors.hpp"

namespace csc {

TrafficClass make_traffic_class(std::string name, double demand_bps,
                                double r_min_bps, double r_rec_bps) {
  TrafficClass tc;
  tc.name = std::move(name);
  tc.demand_bps = demand_bps;
  tc.r_min_bps = r_min_bps;
  tc.r_rec_bps = r_rec_bps;
  tc.sigmoid_slope = demand_bps > 0.0 ? 10.0 / demand_bps : 0.0;
  tc.concave_alpha = 2.0;
  return tc;
}

void validate(const TrafficClass& tc, const std::string& path) {
  std::vector<std::string> bad;
  if (!(tc.demand_bps > 0.0)) bad.push_back(path + ".demand_bps");
  if (!(tc.r_min_bps > 0.0)) bad.push_back(path + ".r_min_bps");
  if (!(tc.r_rec_bps >= tc.r_min_bps)) bad.push_back(path + ".r_rec_bps");
  if (!(tc.sigmoid_slope > 0.0)) bad.push_back(path + ".sigmoid_slope");
  if (!(tc.concave_alpha > 0.0)) bad.push_back(path + ".concave_alpha");
  if (!bad.empty()) {
    std::string msg = "invalid traffic class '" + tc.name + "'";
    throw ConfigError(std::move(bad), msg);
  }
}

namespace traffic {

TrafficClass skype_group() {
  return make_traffic_class("skype-group", 2.0e6, 512.0e3, 2.0e6);
}
TrafficClass skype_hd() {
  return make_traffic_class("skype-hd", 1.5e6, 1.2e6, 1.5e6);
}
TrafficClass skype_general() {
  return make_traffic_class("skype-general", 500.0e3, 128.0e3, 500.0e3);
}
std::vector<TrafficClass> skype_catalog() {
  return {skype_group(), skype_hd(), skype_general()};
}

}  // namespace traffic

nlohmann::json traffic_class_to_json(const TrafficClass& tc) {
  return {{"name", tc.name},
          {"demand_bps", tc.demand_bps},
          {"r_min_bps", tc.r_min_bps},
          {"r_rec_bps", tc.r_rec_bps},
          {"sigmoid_slope", tc.sigmoid_slope},
          {"concave_alpha", tc.concave_alpha}};
}

TrafficClass traffic_class_from_json(const nlohmann::json& doc,
                                     const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path);
  std::vector<std::string> bad;
  auto num = [&](const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) {
      bad.push_back(path + "." + key);
      return fallback;
    }
    return doc[key].get<double>();
  };
  if (!doc.contains("demand_bps")) bad.push_back(path + ".demand_bps");
  const double demand = num("demand_bps", 0.0);
  TrafficClass tc = make_traffic_class(
      doc.value("name", std::string{}), demand, num("r_min_bps", demand),
      num("r_rec_bps", demand));
  tc.sigmoid_slope = num("sigmoid_slope", tc.sigmoid_slope);
  tc.concave_alpha = num("concave_alpha", tc.concave_alpha);
  if (!bad.empty()) throw ConfigError(std::move(bad), "malformed traffic class");
  validate(tc, path);
  return tc;
}

std::vector<TrafficClass> load_traffic_catalog(const nlohmann::json& doc) {
  const nlohmann::json& list =
      doc.is_object() && doc.contains("classes") ? doc["classes"] : doc;
  if (!list.is_array()) throw ConfigError("classes");
  std::vector<TrafficClass> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(
        traffic_class_from_json(list[i], "classes[" + std::to_string(i) + "]"));
  return out;
}

std::string_view to_string(QoeLevel level) {
  switch (level) {
    case QoeLevel::kBad: return "Bad";
    case QoeLevel::kPoor: return "Poor";
    case QoeLevel::kFair: return "Fair";
    case QoeLevel::kGood: return "Good";
    case QoeLevel::kExcellent: return "Excellent";
  }
  return "?";
}

double satisfaction_linear(double r, double d) {
  if (!(d > 0.0)) throw std::domain_error("satisfaction_linear: demand <= 0");
  if (r >= d) return 1.0;
  return std::max(r, 0.0) / d;
}

double satisfaction_sigmoid(double r, double d, double c) {
  const double z = c * (r - d);
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double satisfaction_concave(double r, double d, double alpha) {
  if (!(d > 0.0)) throw std::domain_error("satisfaction_concave: demand <= 0");
  if (!(alpha > 0.0)) throw std::domain_error("satisfaction_concave: alpha <= 0");
  if (r <= 0.0) return 0.0;
  const double base = 2.0 * std::sqrt(r * d) / (d + r);
  return std::pow(std::min(base, 1.0), alpha);
}

std::string_view to_string(SatisfactionKind kind) {
  switch (kind) {
    case SatisfactionKind::kLinear: return "linear";
    case SatisfactionKind::kSigmoid: return "sigmoid";
    case SatisfactionKind::kConcave: return "concave";
    case SatisfactionKind::kNone: return "none";
  }
  return "?";
}

SatisfactionKind satisfaction_kind_from_string(std::string_view name) {
  if (name == "linear") return SatisfactionKind::kLinear;
  if (name == "sigmoid") return SatisfactionKind::kSigmoid;
  if (name == "concave") return SatisfactionKind::kConcave;
  if (name == "none" || name == "raw-rate") return SatisfactionKind::kNone;
  throw ConfigError({"satisfaction_kind"},
                    "unknown satisfaction kind '" + std::string(name) + "'");
}

double satisfaction(SatisfactionKind kind, double r, const TrafficClass& tc) {
  switch (kind) {
    case SatisfactionKind::kLinear: return satisfaction_linear(r, tc.demand_bps);
    case SatisfactionKind::kSigmoid:
      return satisfaction_sigmoid(r, tc.demand_bps, tc.sigmoid_slope);
    case SatisfactionKind::kConcave:
      return satisfaction_concave(r, tc.demand_bps, tc.concave_alpha);
    case SatisfactionKind::kNone: return r;
  }
  return r;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double received_power_dbm(double tx_dbm, double distance_m, double exponent) {
  return tx_dbm - 10.0 * exponent * std::log10(std::max(distance_m, 1.0));
}

double sinr(const NetworkTopology& topo, std::span<const int> channels,
            const ActiveSet& active, CellId cell,
            const PropagationParams& prop) {
  if (channels.size() != topo.size())
    throw std::invalid_argument("sinr: channel vector size mismatch");
  if (!active.contains(cell)) throw std::domain_error("sinr: cell is inactive");
  const Cell& self = topo.cell(cell);
  const double signal = dbm_to_mw(received_power_dbm(
      self.tx_power_dbm, prop.serving_distance_m, prop.pathloss_exponent));
  double interference = 0.0;
  const int ch = channels[static_cast<std::size_t>(cell)];
  for (CellId m : topo.neighbors(cell)) {
    if (!active.contains(m) || channels[static_cast<std::size_t>(m)] != ch)
      continue;
    interference += dbm_to_mw(received_power_dbm(
        topo.cell(m).tx_power_dbm, topo.distance(cell, m),
        prop.pathloss_exponent));
  }
  return signal / (dbm_to_mw(prop.noise_dbm) + interference);
}

double shannon_rate(double bandwidth_hz, double sinr) {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

QoeThresholds qoe_thresholds(const TrafficClass& tc) {
  const double rm = tc.r_min_bps;
  const double rc = tc.r_rec_bps;
  return QoeThresholds{rm, std::sqrt(rm * rc), rc, rc * std::sqrt(rc / rm)};
}

double mos_score(double r, const TrafficClass& tc) {
  const double rm = tc.r_min_bps;
  const double rc = tc.r_rec_bps;
  if (r <= 0.0) return 1.0;
  if (rc <= rm) return r < rm ? 1.0 : 5.0;
  const double mos = 2.0 + 2.0 * (std::log(r) - std::log(rm)) /
                               (std::log(rc) - std::log(rm));
  return std::clamp(mos, 1.0, 5.0);
}

QoeLevel qoe_level(double r, const TrafficClass& tc) {
  // Compared against the thresholds directly so the anchor rates land
  // exactly on their levels.
  const QoeThresholds t = qoe_thresholds(tc);
  if (r >= t.excellent) return QoeLevel::kExcellent;
  if (r >= t.good) return QoeLevel::kGood;
  if (r >= t.fair) return QoeLevel::kFair;
  if (r >= t.poor) return QoeLevel::kPoor;
  return QoeLevel::kBad;
}

}  // namespace csc
