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
#include <span>
#include <vector>

#include "bipexp/graph.hpp"
#include "bipexp/rng.hpp"

namespace bipexp {

enum class Arm { kTreated, kControl };

/// Throws InvalidProbability unless 0 < p < 1.
void check_probability(double p);

/// base^exponent by repeated multiplication. Exponents are small degrees, so
/// this stays exact enough for oracle comparisons and avoids pow() drift.
double int_power(double base, std::size_t exponent) noexcept;

/// Bernoulli(p) treatment vector over the m intervention units.
class Assignment {
 public:
  Assignment(std::vector<std::uint8_t> z, double p);

  std::span<const std::uint8_t> z() const noexcept { return z_; }
  double p() const noexcept { return p_; }
  std::size_t m() const noexcept { return z_.size(); }
  std::size_t num_treated() const noexcept;
  /// z_k - p
  std::vector<double> centered() const;

 private:
  std::vector<std::uint8_t> z_;
  double p_;
};

Assignment sample_assignment(double p, std::size_t m, Rng& rng);

/// T_i = 1 iff every neighbor of i is treated; C_i = 1 iff none is.
struct Exposure {
  std::vector<std::uint8_t> treated;
  std::vector<std::uint8_t> control;

  std::size_t num_treated() const noexcept;
  std::size_t num_control() const noexcept;
};

/// Throws DimensionMismatch if a.m() != g.m().
Exposure exposures(const BipartiteGraph& g, const Assignment& a);

/// P(T_i = 1) = p^deg(i), or (1-p)^deg(i) for the control arm.
double marginal_prob(const BipartiteGraph& g, double p, Index i, Arm arm);
/// P(T_i T_j = 1) = p^|N(i) ∪ N(j)|, likewise for control.
double joint_prob(const BipartiteGraph& g, double p, Index i, Index j, Arm arm);

}  // namespace bipexp
