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

#include "bipexp/variance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bipexp/error.hpp"

namespace bipexp {
namespace {

VarianceEstimate estimate_with_residuals(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                         const LambdaSet& ls, const Eigen::VectorXd& r1,
                                         const Eigen::VectorXd& r0) {
  if (a.m() != g.m() || ds.n() != g.n() || ls.n() != g.n()) {
    fail(ErrorCode::kDimensionMismatch, "graph, assignment, dataset and lambda set disagree in size");
  }
  const Exposure e = exposures(g, a);
  double s1 = 0.0;
  double s0 = 0.0;
  for (const LambdaEntry& en : ls.entries()) {
    const Index i = en.i, j = en.j;
    const double mult = i == j ? 1.0 : 2.0;
    if (e.treated[i] && e.treated[j]) {
      s1 += mult * r1(i) * r1(j) * ls.value(LambdaKind::kTreated, en) / ls.treated_joint(en);
    }
    if (e.control[i] && e.control[j]) {
      s0 += mult * r0(i) * r0(j) * ls.value(LambdaKind::kControl, en) / ls.control_joint(en);
    }
  }
  const double n = static_cast<double>(g.n());
  return combine_upper_bound(s1 / (n * n), s0 / (n * n));
}

}  // namespace

VarianceEstimate combine_upper_bound(double v1, double v0) noexcept {
  VarianceEstimate ve;
  ve.v1_hat = v1;
  ve.v0_hat = v0;
  ve.v1_clamped = v1 < 0.0;
  ve.v0_clamped = v0 < 0.0;
  const double root = std::sqrt(std::max(v1, 0.0)) + std::sqrt(std::max(v0, 0.0));
  ve.v_ub_hat = root * root;
  return ve;
}

VarianceEstimate variance_estimate(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                   const LambdaSet& ls, const PointEstimate& pe) {
  const Eigen::VectorXd r1 = ds.y().array() - pe.mu1_hat;
  const Eigen::VectorXd r0 = ds.y().array() - pe.mu0_hat;
  return estimate_with_residuals(g, a, ds, ls, r1, r0);
}

VarianceEstimate variance_estimate(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                   const LambdaSet& ls, const PointEstimate& pe,
                                   const AdjustmentCoefficients& coef) {
  if (static_cast<std::size_t>(coef.beta1.size()) != ds.d() ||
      static_cast<std::size_t>(coef.beta0.size()) != ds.d()) {
    fail(ErrorCode::kDimensionMismatch, "coefficient length must equal covariate dimension");
  }
  const Eigen::VectorXd r1 = (ds.y() - ds.x() * coef.beta1).array() - pe.mu1_hat;
  const Eigen::VectorXd r0 = (ds.y() - ds.x() * coef.beta0).array() - pe.mu0_hat;
  return estimate_with_residuals(g, a, ds, ls, r1, r0);
}

ConfidenceInterval confidence_interval(double tau_hat, const VarianceEstimate& ve, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " must lie strictly between 0 and 1";
    fail(ErrorCode::kInvalidAlpha, os.str());
  }
  ConfidenceInterval ci;
  ci.level = 1.0 - alpha;
  ci.z_quantile = normal_quantile(1.0 - alpha / 2.0);
  const double half = ci.z_quantile * std::sqrt(ve.v_ub_hat);
  ci.lower = tau_hat - half;
  ci.upper = tau_hat + half;
  return ci;
}

bool reject_null(const ConfidenceInterval& ci, double tau0) noexcept {
  return tau0 < ci.lower || tau0 > ci.upper;
}

}  // namespace bipexp
