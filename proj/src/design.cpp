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

#include "bipexp/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bipexp/error.hpp"

namespace bipexp {

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "p = " << p << " must lie strictly between 0 and 1";
    fail(ErrorCode::kInvalidProbability, os.str());
  }
}

double int_power(double base, std::size_t exponent) noexcept {
  double r = 1.0;
  for (std::size_t e = 0; e < exponent; ++e) r *= base;
  return r;
}

Assignment::Assignment(std::vector<std::uint8_t> z, double p) : z_(std::move(z)), p_(p) {
  check_probability(p);
  for (auto& v : z_) {
    if (v > 1) fail(ErrorCode::kInvalidArgument, "assignment entries must be 0 or 1");
  }
}

std::size_t Assignment::num_treated() const noexcept {
  return static_cast<std::size_t>(std::count(z_.begin(), z_.end(), std::uint8_t{1}));
}

std::vector<double> Assignment::centered() const {
  std::vector<double> out(z_.size());
  std::transform(z_.begin(), z_.end(), out.begin(), [this](std::uint8_t v) { return v - p_; });
  return out;
}

Assignment sample_assignment(double p, std::size_t m, Rng& rng) {
  check_probability(p);
  std::vector<std::uint8_t> z(m);
  for (auto& v : z) v = rng.bernoulli(p) ? 1 : 0;
  return Assignment(std::move(z), p);
}

std::size_t Exposure::num_treated() const noexcept {
  return static_cast<std::size_t>(std::count(treated.begin(), treated.end(), std::uint8_t{1}));
}

std::size_t Exposure::num_control() const noexcept {
  return static_cast<std::size_t>(std::count(control.begin(), control.end(), std::uint8_t{1}));
}

Exposure exposures(const BipartiteGraph& g, const Assignment& a) {
  if (a.m() != g.m()) {
    fail(ErrorCode::kDimensionMismatch, "assignment has " + std::to_string(a.m()) +
                                            " entries, graph has m = " + std::to_string(g.m()));
  }
  Exposure e;
  e.treated.assign(g.n(), 0);
  e.control.assign(g.n(), 0);
  const auto z = a.z();
  for (Index i = 0; i < g.n(); ++i) {
    bool all_treated = true;
    bool all_control = true;
    for (Index k : g.outcome_neighbors(i)) {
      all_treated = all_treated && z[k] == 1;
      all_control = all_control && z[k] == 0;
    }
    e.treated[i] = all_treated ? 1 : 0;
    e.control[i] = all_control ? 1 : 0;
  }
  return e;
}

double marginal_prob(const BipartiteGraph& g, double p, Index i, Arm arm) {
  check_probability(p);
  const double base = arm == Arm::kTreated ? p : 1.0 - p;
  return int_power(base, g.outcome_degree(i));
}

double joint_prob(const BipartiteGraph& g, double p, Index i, Index j, Arm arm) {
  check_probability(p);
  const double base = arm == Arm::kTreated ? p : 1.0 - p;
  return int_power(base, g.union_size(i, j));
}

}  // namespace bipexp
