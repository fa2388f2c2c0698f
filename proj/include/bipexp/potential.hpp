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
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "bipexp/design.hpp"
#include "bipexp/graph.hpp"

namespace bipexp {

/// Outcome of unit i under an assignment that leaves i neither fully treated
/// nor fully control. No estimator here ever reads such an outcome.
using IntermediateRule = std::function<double(Index unit, std::span<const std::uint8_t> z)>;

/// Potential outcomes at the two extreme assignments: y1 = Y(all treated),
/// y0 = Y(all control). Simulation and testing only.
struct PotentialTable {
  Eigen::VectorXd y1;
  Eigen::VectorXd y0;
  /// Empty means intermediate outcomes are 0.
  IntermediateRule intermediate;

  std::size_t n() const noexcept { return static_cast<std::size_t>(y1.size()); }

  /// Throws DimensionMismatch or InvalidArgument (non-finite entries).
  void validate(std::size_t n) const;

  /// Observed outcomes Y(z): y1 where T_i = 1, y0 where C_i = 1, otherwise
  /// the intermediate rule.
  Eigen::VectorXd observe(const BipartiteGraph& g, const Assignment& a) const;
};

}  // namespace bipexp
