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

#ifndef CSC_ERRORS_HPP_
#define CSC_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace csc {

// Invalid configuration. Carries the names of every offending field so that
// callers (the CLI in particular) can report all of them at once.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::vector<std::string> fields, const std::string& message)
      : std::runtime_error(message), fields_(std::move(fields)) {}
  explicit ConfigError(const std::string& field)
      : ConfigError({field}, "invalid configuration field: " + field) {}

  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

// The joint action space is too large to enumerate.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(double state_space_size, double cap)
      : std::runtime_error("joint action space of size " +
                           std::to_string(state_space_size) +
                           " exceeds enumeration cap " + std::to_string(cap)),
        size_(state_space_size) {}

  double state_space_size() const noexcept { return size_; }

 private:
  double size_;
};

// A caller broke a documented precondition at runtime (e.g. a learning
// payoff outside [0, 1] after normalization).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace csc

#endif  // CSC_ERRORS_HPP_
