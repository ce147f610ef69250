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

#ifndef CSC_RANDOM_HPP_
#define CSC_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>

namespace csc {

// Seeded generator used everywhere results must be reproducible.
//
// The engine is std::mt19937_64; the distributions are written out here
// rather than taken from <random> because the standard leaves their output
// implementation-defined, and every artifact must be bit-identical for a
// given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t index(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

  // Index drawn from a (normalized) probability vector.
  std::size_t categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a stream id
// (splitmix64 finalizer over the combination).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace csc

#endif  // CSC_RANDOM_HPP_
