// Copyright 2026 The bipexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "bipexp/sim.hpp"

namespace bipexp {

/// Simulation config file: one "key = value" per line, "#" starts a comment,
/// values may be double-quoted. Keys:
///   regime, n, m, max_degree, p, gamma (e.g. [5, 5]), reps, alpha,
///   master_seed, degree_covariate, noise_scale (variance | sd), tau0,
///   null_at_truth
/// Unset keys keep their defaults. Throws InvalidConfig.
DGPConfig parse_config(std::string_view text, const std::string& source = "<memory>");
DGPConfig read_config(const std::string& path);

/// Applies one key/value pair (same syntax as the file). Throws InvalidConfig.
void set_config_value(DGPConfig& cfg, std::string_view key, std::string_view value);

/// Canonical file text for cfg; parse_config(format_config(c)) == c.
std::string format_config(const DGPConfig& cfg);

}  // namespace bipexp
