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

// Shipped desk-scale experiment definitions.

#ifndef CSC_PRESETS_HPP_
#define CSC_PRESETS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "csc/config.hpp"

namespace csc {

struct PresetInfo {
  std::string name;
  std::string alias;
  std::string description;
};

const std::vector<PresetInfo>& list_presets();

// Looks a preset up by name or alias. Throws ConfigError({"preset"}) for an
// unknown name.
ExperimentConfig preset(std::string_view name);

// The five application stand-ins of the satisfaction experiment, one demand
// each (demand = R_min = R_rec).
std::vector<TrafficClass> application_traffic_classes();

}  // namespace csc

#endif  // CSC_PRESETS_HPP_
