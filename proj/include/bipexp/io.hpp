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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bipexp {

/// Rows of an `outcome_id,y,x1,...,xd` file, reordered by id. Covariates are
/// raw (not yet centered).
struct ObservedData {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  std::vector<std::string> covariate_names;
};

ObservedData parse_data_csv(const std::string& text, const std::string& source = "<memory>");
ObservedData read_data_csv(const std::string& path);

/// `intervention_id,z` file; ids must cover 1..m exactly once.
std::vector<std::uint8_t> parse_assignment_csv(const std::string& text,
                                               const std::string& source = "<memory>");
std::vector<std::uint8_t> read_assignment_csv(const std::string& path);

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace bipexp
