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

#include "bipexp/design.hpp"
#include "bipexp/estimator.hpp"
#include "bipexp/graph.hpp"
#include "bipexp/lambda.hpp"

namespace bipexp {

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

/// Inverse standard normal CDF for 0 < prob < 1, accurate to about 1e-12
/// (rational approximation followed by one Halley step).
double normal_quantile(double prob);

struct VarianceEstimate {
  double v1_hat = 0.0;
  double v0_hat = 0.0;
  /// (sqrt(max(v1,0)) + sqrt(max(v0,0)))^2
  double v_ub_hat = 0.0;
  bool v1_clamped = false;
  bool v0_clamped = false;

  int clamped_count() const noexcept { return int(v1_clamped) + int(v0_clamped); }
};

/// Combines arm-level variances into the Cauchy-Schwarz upper bound,
/// clamping negative components to zero.
VarianceEstimate combine_upper_bound(double v1, double v0) noexcept;

/// Conservative variance estimate for a Hájek-type estimate. Residuals are
/// Y_i - mu_hat - beta'X_i with the means taken from `pe`.
VarianceEstimate variance_estimate(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                   const LambdaSet& ls, const PointEstimate& pe);
VarianceEstimate variance_estimate(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                   const LambdaSet& ls, const PointEstimate& pe,
                                   const AdjustmentCoefficients& coef);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  double z_quantile = 0.0;
};

/// Wald interval tau_hat -/+ q_{alpha/2} sqrt(v_ub_hat). Throws InvalidAlpha.
ConfidenceInterval confidence_interval(double tau_hat, const VarianceEstimate& ve, double alpha);

/// True iff tau0 lies outside the closed interval.
bool reject_null(const ConfidenceInterval& ci, double tau0) noexcept;

}  // namespace bipexp
