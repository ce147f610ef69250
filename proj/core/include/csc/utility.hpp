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

// Scalar utility primitives: satisfaction curves, SINR and Shannon rate,
// and the throughput -> opinion-score (QoE) mapping.

#ifndef CSC_UTILITY_HPP_
#define CSC_UTILITY_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "csc/net_model.hpp"

namespace csc {

// Demand parameters of one traffic type. Rates are in bit/s.
struct TrafficClass {
  std::string name;
  double demand_bps = 1.0e6;
  double r_min_bps = 1.0e6;
  double r_rec_bps = 1.0e6;
  // Per-bps slope of the sigmoid satisfaction curve.
  double sigmoid_slope = 1.0e-5;
  double concave_alpha = 2.0;

  friend bool operator==(const TrafficClass&, const TrafficClass&) = default;
};

// Builds a class with the default slopes: sigmoid_slope = 10 / demand (the
// transition spans roughly a tenth of the demand) and concave_alpha = 2.
TrafficClass make_traffic_class(std::string name, double demand_bps,
                                double r_min_bps, double r_rec_bps);

// Throws ConfigError naming bad fields (prefixed by `path`).
void validate(const TrafficClass& tc, const std::string& path = "traffic");

namespace traffic {
// Video-calling presets; demand is the recommended rate.
TrafficClass skype_group();
TrafficClass skype_hd();
TrafficClass skype_general();
std::vector<TrafficClass> skype_catalog();
}  // namespace traffic

nlohmann::json traffic_class_to_json(const TrafficClass& tc);
TrafficClass traffic_class_from_json(const nlohmann::json& doc,
                                     const std::string& path = "traffic");
// Accepts either a bare array of classes or {"classes": [...]}.
std::vector<TrafficClass> load_traffic_catalog(const nlohmann::json& doc);

enum class QoeLevel { kBad = 1, kPoor = 2, kFair = 3, kGood = 4, kExcellent = 5 };

inline constexpr std::array<QoeLevel, 5> kAllQoeLevels = {
    QoeLevel::kBad, QoeLevel::kPoor, QoeLevel::kFair, QoeLevel::kGood,
    QoeLevel::kExcellent};

std::string_view to_string(QoeLevel level);
inline int ordinal(QoeLevel level) { return static_cast<int>(level); }

// r/d below the demand, 1 above. Throws std::domain_error if d <= 0.
double satisfaction_linear(double r, double d);
// 1 / (1 + exp(-c (r - d))), evaluated without overflow.
double satisfaction_sigmoid(double r, double d, double c);
// (2 sqrt(r d) / (d + r))^alpha; peaks at r = d and falls off on both sides.
// Throws std::domain_error if d <= 0 or alpha <= 0.
double satisfaction_concave(double r, double d, double alpha);

enum class SatisfactionKind { kLinear, kSigmoid, kConcave, kNone };

std::string_view to_string(SatisfactionKind kind);
SatisfactionKind satisfaction_kind_from_string(std::string_view name);

// Dispatches on `kind`; kNone returns r unchanged.
double satisfaction(SatisfactionKind kind, double r, const TrafficClass& tc);

// Log-distance propagation and receiver noise.
struct PropagationParams {
  double noise_dbm = -100.0;
  double pathloss_exponent = 3.5;
  // Distance between a cell and the user it serves.
  double serving_distance_m = 10.0;

  friend bool operator==(const PropagationParams&,
                         const PropagationParams&) = default;
};

double dbm_to_mw(double dbm);
// tx_dbm - 10 gamma log10(max(distance, 1 m)).
double received_power_dbm(double tx_dbm, double distance_m, double exponent);

// SINR (linear) of `cell`: own signal at the serving distance over noise plus
// the received power of every active neighbor on the same channel.
// `channels` holds each cell's channel index. Throws std::domain_error if the
// cell is not active.
double sinr(const NetworkTopology& topo, std::span<const int> channels,
            const ActiveSet& active, CellId cell,
            const PropagationParams& prop);

// B log2(1 + sinr).
double shannon_rate(double bandwidth_hz, double sinr);

// Rate thresholds at which each level starts (Poor, Fair, Good, Excellent).
struct QoeThresholds {
  double poor;
  double fair;
  double good;
  double excellent;
};

// Continuous opinion score 2 + 2 ln(r/R_m) / ln(R_c/R_m), clipped to [1, 5].
// Anchors: R_m -> 2 (Poor), R_c -> 4 (Good).
double mos_score(double r, const TrafficClass& tc);
QoeThresholds qoe_thresholds(const TrafficClass& tc);
// Step function of the rate: Bad below R_m, then one level per unit of MOS.
QoeLevel qoe_level(double r, const TrafficClass& tc);

}  // namespace csc

#endif  // CSC_UTILITY_HPP_
