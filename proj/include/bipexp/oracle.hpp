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

#include <functional>

#include <Eigen/Dense>

#include "bipexp/design.hpp"
#include "bipexp/graph.hpp"
#include "bipexp/potential.hpp"

namespace bipexp {

/// A statistic of one draw: the assignment and the outcomes it reveals.
using Statistic = std::function<double(const Assignment& a, const Eigen::VectorXd& y_obs)>;

inline constexpr std::size_t kMaxEnumerationUnits = 12;

struct ExactMoments {
  double mean = 0.0;
  double variance = 0.0;
  /// Sum of assignment probabilities; 1 up to rounding.
  double total_probability = 0.0;
};

/// Moments of a statistic over all 2^m assignments, each weighted by
/// p^{#treated} (1-p)^{#control}. Throws EnumerationGuardExceeded for m > 12.
ExactMoments exact_moments(const BipartiteGraph& g, double p, const PotentialTable& pt, const Statistic& s);

double exact_expectation(const BipartiteGraph& g, double p, const PotentialTable& pt, const Statistic& s);
double exact_variance(const BipartiteGraph& g, double p, const PotentialTable& pt, const Statistic& s);

/// Calls f(assignment, probability) for every assignment in bit order.
void for_each_assignment(std::size_t m, double p, const std::function<void(const Assignment&, double)>& f);

}  // namespace bipexp
