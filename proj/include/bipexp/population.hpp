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

#include <optional>

#include <Eigen/Dense>

#include "bipexp/estimator.hpp"
#include "bipexp/lambda.hpp"
#include "bipexp/potential.hpp"

namespace bipexp {

struct Estimand {
  double tau = 0.0;
  double mu1 = 0.0;
  double mu0 = 0.0;
};

Estimand true_estimand(const PotentialTable& pt);

struct PopulationVariance {
  double v_n = 0.0;
  double v1 = 0.0;
  double v0 = 0.0;
  /// (sqrt(v1) + sqrt(v0))^2
  double v_ub = 0.0;
};

/// Asymptotic variance of the Hájek estimator as quadratic forms in the
/// centered potential outcomes.
PopulationVariance true_variance(const LambdaSet& ls, const PotentialTable& pt);

/// Same, for the adjusted estimator: potential outcomes are replaced by the
/// residuals Y(1) - X beta1 and Y(0) - X beta0 before centering.
PopulationVariance true_variance(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x,
                                 const AdjustmentCoefficients& coef);

/// Efficiency gain L(beta1, beta0) = n^-2 (2 r'beta - beta' Omega beta) with
/// Omega the covariate gram and r the population right-hand side.
double efficiency_gain(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x,
                       const Eigen::VectorXd& beta1, const Eigen::VectorXd& beta0);

}  // namespace bipexp
