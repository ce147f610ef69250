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

#include "csc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace csc {

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

Aggregate aggregate(std::span<const double> values, double confidence) {
  if (values.empty()) throw std::invalid_argument("aggregate of an empty sample");
  Aggregate a;
  a.n = values.size();
  a.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(a.n);
  a.median = median({values.begin(), values.end()});
  a.ci_lo = a.ci_hi = a.mean;
  a.ci_insufficient = a.n < kMinSamplesForCi;
  if (a.n < 2) return a;
  double ss = 0.0;
  for (double v : values) ss += (v - a.mean) * (v - a.mean);
  a.sd = std::sqrt(ss / static_cast<double>(a.n - 1));
  const boost::math::students_t dist(static_cast<double>(a.n - 1));
  const double t = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  const double half = t * a.sd / std::sqrt(static_cast<double>(a.n));
  a.ci_lo = a.mean - half;
  a.ci_hi = a.mean + half;
  return a;
}

PairedTest paired_t_test_greater(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("paired test needs two equal samples of size >= 2");
  PairedTest out;
  out.n = a.size();
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  out.mean_difference = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(out.n);
  double ss = 0.0;
  for (double v : d) ss += (v - out.mean_difference) * (v - out.mean_difference);
  const double se = std::sqrt(ss / static_cast<double>(out.n - 1) / static_cast<double>(out.n));
  if (se == 0.0) {
    out.t = out.mean_difference > 0.0   ? std::numeric_limits<double>::infinity()
            : out.mean_difference < 0.0 ? -std::numeric_limits<double>::infinity()
                                        : 0.0;
    out.p_value = out.mean_difference > 0.0 ? 0.0 : 1.0;
    return out;
  }
  out.t = out.mean_difference / se;
  const boost::math::students_t dist(static_cast<double>(out.n - 1));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.t));
  return out;
}

}  // namespace csc
