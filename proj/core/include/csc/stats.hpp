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

// Small-sample statistics over per-seed values.

#ifndef CSC_STATS_HPP_
#define CSC_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace csc {

// Below this many samples a confidence interval is reported but flagged.
inline constexpr std::size_t kMinSamplesForCi = 30;

struct Aggregate {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;  // sample standard deviation
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool ci_insufficient = true;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

double median(std::vector<double> values);

// Student-t confidence interval for the mean. Throws std::invalid_argument
// on an empty sample.
Aggregate aggregate(std::span<const double> values, double confidence = 0.95);

struct PairedTest {
  std::size_t n = 0;
  double mean_difference = 0.0;
  double t = 0.0;
  // One-sided p-value for mean(a - b) > 0.
  double p_value = 1.0;
};

// Paired t-test of a against b (same length, at least two pairs).
PairedTest paired_t_test_greater(std::span<const double> a, std::span<const double> b);

}  // namespace csc

#endif  // CSC_STATS_HPP_
