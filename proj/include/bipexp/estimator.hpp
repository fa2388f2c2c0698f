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

#include <string_view>

#include <Eigen/Dense>

#include "bipexp/design.hpp"
#include "bipexp/graph.hpp"
#include "bipexp/lambda.hpp"
#include "bipexp/potential.hpp"

namespace bipexp {

/// Observed outcomes and a column-centered covariate matrix (n x d, d may
/// be 0). Centering happens once, at construction.
class Dataset {
 public:
  /// Centers the columns of x_raw and records the subtracted means.
  static Dataset from_raw(Eigen::VectorXd y, const Eigen::MatrixXd& x_raw);
  /// Takes x as already centered; throws InvalidArgument if any column sum
  /// exceeds 1e-9 * n in magnitude.
  static Dataset centered(Eigen::VectorXd y, Eigen::MatrixXd x);
  static Dataset outcomes_only(Eigen::VectorXd y);

  const Eigen::VectorXd& y() const noexcept { return y_; }
  const Eigen::MatrixXd& x() const noexcept { return x_; }
  const Eigen::VectorXd& column_means() const noexcept { return means_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(y_.size()); }
  std::size_t d() const noexcept { return static_cast<std::size_t>(x_.cols()); }

  /// Same covariates, new outcomes.
  Dataset with_outcomes(Eigen::VectorXd y) const;
  /// Appends the centered outcome degree as an extra covariate column.
  Dataset with_degree_covariate(const BipartiteGraph& g) const;

 private:
  Dataset() = default;
  Eigen::VectorXd y_;
  Eigen::MatrixXd x_;
  Eigen::VectorXd means_;
};

struct PointEstimate {
  double tau_hat = 0.0;
  double mu1_hat = 0.0;
  double mu0_hat = 0.0;
  std::size_t n_treated_exposed = 0;
  std::size_t n_control_exposed = 0;
};

enum class CoefficientSource { kOracle, kEstimated, kUser };
std::string_view to_string(CoefficientSource s) noexcept;

struct AdjustmentCoefficients {
  Eigen::VectorXd beta1;
  Eigen::VectorXd beta0;
  /// Effective rank of the 2d x 2d covariate gram matrix.
  std::size_t rank = 0;
  CoefficientSource source = CoefficientSource::kUser;

  static AdjustmentCoefficients zero(std::size_t d);
};

/// Ratio-normalized inverse-probability-weighted difference in means.
/// Throws NoTreatedExposure / NoControlExposure when an arm has no exposed unit.
PointEstimate hajek(const BipartiteGraph& g, const Assignment& a, const Dataset& ds);

/// Unnormalized (Horvitz-Thompson) version; unbiased, never throws on
/// empty arms.
PointEstimate horvitz_thompson(const BipartiteGraph& g, const Assignment& a, const Dataset& ds);

/// Hájek estimator on residuals Y - beta1'X (treated) and Y - beta0'X (control).
PointEstimate adjusted_hajek(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                             const AdjustmentCoefficients& coef);

/// Covariate gram matrix [[X'L1X, X'LcX], [X'LcX, X'L0X]] (2d x 2d).
Eigen::MatrixXd covariate_gram(const LambdaSet& ls, const Eigen::MatrixXd& x);

/// Minimum-norm solution of gram * beta = rhs. Singular values below
/// kPinvRelativeCutoff times the largest are treated as zero.
struct PinvSolution {
  Eigen::VectorXd solution;
  std::size_t rank = 0;
};
inline constexpr double kPinvRelativeCutoff = 1e-10;
PinvSolution pinv_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs);

/// Feasible coefficients: population covariate gram on the left,
/// inverse-probability-weighted pair sums with Hájek residuals on the right.
AdjustmentCoefficients estimate_beta(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                     const LambdaSet& ls);

/// Right-hand side of the coefficient system from one draw, centered at the
/// supplied arm means (the Hájek means in estimate_beta).
Eigen::VectorXd beta_rhs(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                         const LambdaSet& ls, double mu1, double mu0);

/// Population-optimal coefficients from the full potential-outcome table.
AdjustmentCoefficients oracle_beta(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x);

/// Population right-hand side (X'L1 Y1c + X'Lc Y0c, X'L0 Y0c + X'Lc Y1c)
/// with centered potential outcomes.
Eigen::VectorXd oracle_rhs(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x);

}  // namespace bipexp
