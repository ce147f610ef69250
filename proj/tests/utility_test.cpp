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

#include <cmath>

#include <gtest/gtest.h>

#include "csc/errors.hpp"
#include "csc/random.hpp"
#include "test_util.hpp"

namespace csc {
namespace {

TEST(SatisfactionLinear, Examples) {
  EXPECT_DOUBLE_EQ(satisfaction_linear(5e5, 5e5), 1.0);
  EXPECT_DOUBLE_EQ(satisfaction_linear(1e6, 5e5), 1.0);
  EXPECT_DOUBLE_EQ(satisfaction_linear(1.25e5, 5e5), 0.25);
  EXPECT_THROW(satisfaction_linear(1.0, 0.0), std::domain_error);
  EXPECT_THROW(satisfaction_linear(1.0, -3.0), std::domain_error);
}

TEST(SatisfactionSigmoid, Examples) {
  EXPECT_DOUBLE_EQ(satisfaction_sigmoid(7e5, 7e5, 1e-5), 0.5);
  EXPECT_NEAR(satisfaction_sigmoid(2e6, 1e6, 1e-6), 1.0 / (1.0 + std::exp(-1.0)), 1e-12);
  EXPECT_NEAR(satisfaction_sigmoid(2e6, 1e6, 1e-6), 0.7311, 1e-4);
  double prev = 0.0;
  for (double r = 0; r <= 1e8; r += 1e6) {
    const double v = satisfaction_sigmoid(r, 1e6, 1e-5);
    EXPECT_GE(v, prev);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(SatisfactionConcave, Examples) {
  for (double a : {0.5, 1.0, 2.0, 7.0}) EXPECT_DOUBLE_EQ(satisfaction_concave(3e5, 3e5, a), 1.0);
  EXPECT_DOUBLE_EQ(satisfaction_concave(0.0, 1e6, 2.0), 0.0);
  EXPECT_NEAR(satisfaction_concave(4e6, 1e6, 1.0), 0.8, 1e-12);
  EXPECT_THROW(satisfaction_concave(1.0, 0.0, 1.0), std::domain_error);
}

TEST(SatisfactionConcave, UnimodalWithPeakAtDemand) {
  const double d = 1e6;
  double prev = -1.0;
  for (double r = 0; r <= d; r += d / 100) {
    const double v = satisfaction_concave(r, d, 2.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  for (double r = d + d / 100; r <= 10 * d; r += d / 10) {
    const double v = satisfaction_concave(r, d, 2.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(SatisfactionConcave, ReciprocalSymmetry) {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double d = rng.uniform(1e4, 1e7);
    const double r = d * std::exp(rng.uniform(-5.0, 5.0));
    const double a = rng.uniform(0.1, 5.0);
    EXPECT_NEAR(satisfaction_concave(r, d, a), satisfaction_concave(d * d / r, d, a), 1e-12);
  }
}

TEST(Satisfaction, OutputsInUnitIntervalAndMonotone) {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const double d = rng.uniform(1e4, 5e6);
    const double r1 = rng.uniform(0.0, 3 * d), r2 = r1 + rng.uniform(0.0, d);
    const double c = 10.0 / d;
    for (double v : {satisfaction_linear(r1, d), satisfaction_sigmoid(r1, d, c),
                     satisfaction_concave(r1, d, 2.0)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(satisfaction_linear(r1, d), satisfaction_linear(r2, d));
    EXPECT_LE(satisfaction_sigmoid(r1, d, c), satisfaction_sigmoid(r2, d, c));
  }
}

TEST(TrafficClass, DefaultsAndValidation) {
  const auto tc = make_traffic_class("x", 1e6, 5e5, 1e6);
  EXPECT_DOUBLE_EQ(tc.sigmoid_slope, 10.0 / 1e6);
  EXPECT_DOUBLE_EQ(tc.concave_alpha, 2.0);
  auto bad = tc;
  bad.r_rec_bps = 1e5;
  EXPECT_THROW(validate(bad), ConfigError);
  EXPECT_EQ(traffic_class_from_json(traffic_class_to_json(tc)), tc);
}

TEST(TrafficClass, SkypeCatalog) {
  EXPECT_DOUBLE_EQ(traffic::skype_group().r_min_bps, 512e3);
  EXPECT_DOUBLE_EQ(traffic::skype_group().r_rec_bps, 2e6);
  EXPECT_DOUBLE_EQ(traffic::skype_hd().r_min_bps, 1.2e6);
  EXPECT_DOUBLE_EQ(traffic::skype_hd().r_rec_bps, 1.5e6);
  EXPECT_DOUBLE_EQ(traffic::skype_general().r_min_bps, 128e3);
  EXPECT_DOUBLE_EQ(traffic::skype_general().r_rec_bps, 500e3);
  EXPECT_EQ(load_traffic_catalog(nlohmann::json{{"classes",
                                                 {traffic_class_to_json(traffic::skype_hd())}}})
                .front(),
            traffic::skype_hd());
}

TEST(ShannonRate, Examples) {
  EXPECT_DOUBLE_EQ(shannon_rate(1e6, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(shannon_rate(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(shannon_rate(1e6, 3.0), 2e6);
}

TEST(Sinr, NoCoChannelNeighborIsSnr) {
  const auto t = testing::line_topology({10.0, 20.0}, 30.0);
  const PropagationParams prop;
  const std::vector<int> ch{0, 1};
  const double snr = dbm_to_mw(received_power_dbm(20.0, prop.serving_distance_m,
                                                  prop.pathloss_exponent)) /
                     dbm_to_mw(prop.noise_dbm);
  EXPECT_DOUBLE_EQ(sinr(t, ch, ActiveSet(2), 0, prop), snr);
  // Same channel but the neighbor is idle.
  const std::vector<int> same{0, 0};
  EXPECT_DOUBLE_EQ(sinr(t, same, ActiveSet::from_ids(2, {0}), 0, prop), snr);
}

TEST(Sinr, SymmetricPairInterference) {
  const auto t = testing::line_topology({10.0, 30.0, 50.0}, 30.0);
  const PropagationParams prop;
  const std::vector<int> ch{0, 0, 0};
  ActiveSet only01 = ActiveSet::from_ids(3, {0, 1});
  ActiveSet only12 = ActiveSet::from_ids(3, {1, 2});
  // Cell 1 sees one identical neighbor at 20 m either way.
  EXPECT_DOUBLE_EQ(sinr(t, ch, only01, 1, prop), sinr(t, ch, only12, 1, prop));
  const double s = dbm_to_mw(received_power_dbm(20.0, 10.0, 3.5));
  const double i = dbm_to_mw(received_power_dbm(20.0, 20.0, 3.5));
  EXPECT_NEAR(sinr(t, ch, only01, 1, prop), s / (dbm_to_mw(-100.0) + i), 1e-9);
}

TEST(Sinr, ThreeCellLineMatchesResummation) {
  const auto t = testing::line_topology({10.0, 25.0, 45.0}, 30.0, 2);
  const PropagationParams prop;
  const std::vector<int> ch{1, 1, 1};
  const ActiveSet all(3);
  for (int c = 0; c < 3; ++c) {
    const double r = shannon_rate(1e6, sinr(t, ch, all, c, prop));
    EXPECT_NEAR(r, testing::rate_ref(t, ch, {true, true, true}, c), 1e-6 * r);
  }
}

TEST(Sinr, InactiveCellIsDomainError) {
  const auto t = testing::line_topology({10.0, 20.0}, 30.0);
  const std::vector<int> ch{0, 0};
  EXPECT_THROW(sinr(t, ch, ActiveSet::from_ids(2, {1}), 0, {}), std::domain_error);
}

TEST(QoeLevel, SkypeGroupExamples) {
  const auto tc = traffic::skype_group();
  EXPECT_EQ(qoe_level(400e3, tc), QoeLevel::kBad);
  EXPECT_EQ(qoe_level(512e3, tc), QoeLevel::kPoor);
  EXPECT_EQ(qoe_level(2e6, tc), QoeLevel::kGood);
}

TEST(QoeLevel, FivePlateausFourThresholds) {
  for (const auto& tc : traffic::skype_catalog()) {
    const auto th = qoe_thresholds(tc);
    EXPECT_DOUBLE_EQ(th.poor, tc.r_min_bps);
    EXPECT_NEAR(th.fair, std::sqrt(tc.r_min_bps * tc.r_rec_bps), 1e-6);
    EXPECT_DOUBLE_EQ(th.good, tc.r_rec_bps);
    EXPECT_NEAR(th.excellent, tc.r_rec_bps * std::sqrt(tc.r_rec_bps / tc.r_min_bps), 1e-6);
    int changes = 0;
    QoeLevel prev = qoe_level(0.0, tc);
    EXPECT_EQ(prev, QoeLevel::kBad);
    for (double r = 0; r < 3 * th.excellent; r += th.excellent / 5000) {
      const QoeLevel l = qoe_level(r, tc);
      EXPECT_GE(ordinal(l), ordinal(prev));
      if (l != prev) ++changes;
      prev = l;
    }
    EXPECT_EQ(changes, 4);
    EXPECT_EQ(prev, QoeLevel::kExcellent);
    EXPECT_EQ(qoe_level(th.fair, tc), QoeLevel::kFair);
    EXPECT_EQ(qoe_level(th.excellent * (1 + 1e-12), tc), QoeLevel::kExcellent);
  }
}

TEST(QoeLevel, MosAnchors) {
  const auto tc = traffic::skype_general();
  EXPECT_NEAR(mos_score(tc.r_min_bps, tc), 2.0, 1e-12);
  EXPECT_NEAR(mos_score(tc.r_rec_bps, tc), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(mos_score(1.0, tc), 1.0);
  EXPECT_DOUBLE_EQ(mos_score(1e12, tc), 5.0);
}

}  // namespace
}  // namespace csc
