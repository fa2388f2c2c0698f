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

#include "bipexp/population.hpp"

#include <cmath>
#include <sstream>

#include "bipexp/error.hpp"

namespace bipexp {
namespace {

PopulationVariance quadratic_forms(const LambdaSet& ls, const Eigen::VectorXd& r1, const Eigen::VectorXd& r0) {
  const Eigen::VectorXd c1 = r1.array() - r1.mean();
  const Eigen::VectorXd c0 = r0.array() - r0.mean();
  const double n2 = static_cast<double>(ls.n()) * static_cast<double>(ls.n());
  PopulationVariance pv;
  pv.v1 = ls.bilinear(LambdaKind::kTreated, c1, c1) / n2;
  pv.v0 = ls.bilinear(LambdaKind::kControl, c0, c0) / n2;
  pv.v_n = pv.v1 + pv.v0 + 2.0 * ls.bilinear(LambdaKind::kCross, c1, c0) / n2;
  const double root = std::sqrt(std::max(pv.v1, 0.0)) + std::sqrt(std::max(pv.v0, 0.0));
  pv.v_ub = root * root;
  return pv;
}

void check_covariates(const LambdaSet& ls, const Eigen::MatrixXd& x, Eigen::Index b1, Eigen::Index b0) {
  if (static_cast<std::size_t>(x.rows()) != ls.n()) {
    fail(ErrorCode::kDimensionMismatch, "covariate rows must equal n");
  }
  if (b1 != x.cols() || b0 != x.cols()) {
    std::ostringstream os;
    os << "coefficient lengths (" << b1 << ", " << b0 << ") must equal covariate dimension " << x.cols();
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
}

}  // namespace

void PotentialTable::validate(std::size_t expected_n) const {
  if (static_cast<std::size_t>(y1.size()) != expected_n || static_cast<std::size_t>(y0.size()) != expected_n) {
    std::ostringstream os;
    os << "potential outcome vectors have lengths (" << y1.size() << ", " << y0.size() << "), expected "
       << expected_n;
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
  if (!y1.allFinite() || !y0.allFinite()) {
    fail(ErrorCode::kInvalidArgument, "potential outcomes must be finite");
  }
}

Eigen::VectorXd PotentialTable::observe(const BipartiteGraph& g, const Assignment& a) const {
  validate(g.n());
  const Exposure e = exposures(g, a);
  Eigen::VectorXd y(static_cast<Eigen::Index>(g.n()));
  for (Index i = 0; i < g.n(); ++i) {
    if (e.treated[i]) {
      y(i) = y1(i);
    } else if (e.control[i]) {
      y(i) = y0(i);
    } else {
      y(i) = intermediate ? intermediate(i, a.z()) : 0.0;
    }
  }
  return y;
}

Estimand true_estimand(const PotentialTable& pt) {
  pt.validate(pt.n());
  Estimand est;
  if (pt.n() == 0) return est;
  est.mu1 = pt.y1.mean();
  est.mu0 = pt.y0.mean();
  est.tau = est.mu1 - est.mu0;
  return est;
}

PopulationVariance true_variance(const LambdaSet& ls, const PotentialTable& pt) {
  pt.validate(ls.n());
  return quadratic_forms(ls, pt.y1, pt.y0);
}

PopulationVariance true_variance(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x,
                                 const AdjustmentCoefficients& coef) {
  pt.validate(ls.n());
  check_covariates(ls, x, coef.beta1.size(), coef.beta0.size());
  return quadratic_forms(ls, pt.y1 - x * coef.beta1, pt.y0 - x * coef.beta0);
}

double efficiency_gain(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x,
                       const Eigen::VectorXd& beta1, const Eigen::VectorXd& beta0) {
  pt.validate(ls.n());
  check_covariates(ls, x, beta1.size(), beta0.size());
  const Eigen::MatrixXd xc = x.rowwise() - x.colwise().mean();
  const Eigen::Index d = x.cols();
  Eigen::VectorXd beta(2 * d);
  beta << beta1, beta0;
  const Eigen::MatrixXd omega = covariate_gram(ls, xc);
  const Eigen::VectorXd rhs = oracle_rhs(ls, pt, xc);
  const double n2 = static_cast<double>(ls.n()) * static_cast<double>(ls.n());
  return (2.0 * rhs.dot(beta) - beta.dot(omega * beta)) / n2;
}

}  // namespace bipexp
