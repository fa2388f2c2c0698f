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

#include "bipexp/estimator.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "bipexp/error.hpp"

namespace bipexp {
namespace {

void check_inputs(const BipartiteGraph& g, const Assignment& a, const Dataset& ds) {
  if (a.m() != g.m()) {
    fail(ErrorCode::kDimensionMismatch,
         "assignment length " + std::to_string(a.m()) + " != m = " + std::to_string(g.m()));
  }
  if (ds.n() != g.n()) {
    fail(ErrorCode::kDimensionMismatch,
         "dataset has " + std::to_string(ds.n()) + " rows, graph has n = " + std::to_string(g.n()));
  }
}

void check_coef(const Dataset& ds, const AdjustmentCoefficients& coef) {
  if (static_cast<std::size_t>(coef.beta1.size()) != ds.d() ||
      static_cast<std::size_t>(coef.beta0.size()) != ds.d()) {
    fail(ErrorCode::kDimensionMismatch, "coefficient length must equal covariate dimension " +
                                            std::to_string(ds.d()));
  }
}

// Inverse exposure probabilities 1/p^deg(i) and 1/(1-p)^deg(i).
struct InverseWeights {
  std::vector<double> treated;
  std::vector<double> control;
};

InverseWeights inverse_weights(const BipartiteGraph& g, double p) {
  InverseWeights w;
  w.treated.resize(g.n());
  w.control.resize(g.n());
  for (Index i = 0; i < g.n(); ++i) {
    const std::size_t deg = g.outcome_degree(i);
    w.treated[i] = 1.0 / int_power(p, deg);
    w.control[i] = 1.0 / int_power(1.0 - p, deg);
  }
  return w;
}

// Weighted means of the adjusted outcomes in both arms.
PointEstimate ratio_means(const BipartiteGraph& g, const Assignment& a,
                          const Eigen::VectorXd& y_treated, const Eigen::VectorXd& y_control) {
  const Exposure e = exposures(g, a);
  const InverseWeights w = inverse_weights(g, a.p());
  PointEstimate pe;
  double num1 = 0.0, den1 = 0.0, num0 = 0.0, den0 = 0.0;
  for (Index i = 0; i < g.n(); ++i) {
    if (e.treated[i]) {
      num1 += w.treated[i] * y_treated(i);
      den1 += w.treated[i];
      ++pe.n_treated_exposed;
    }
    if (e.control[i]) {
      num0 += w.control[i] * y_control(i);
      den0 += w.control[i];
      ++pe.n_control_exposed;
    }
  }
  if (pe.n_treated_exposed == 0) fail(ErrorCode::kNoTreatedExposure, "no outcome unit is fully treated");
  if (pe.n_control_exposed == 0) fail(ErrorCode::kNoControlExposure, "no outcome unit is fully control");
  pe.mu1_hat = num1 / den1;
  pe.mu0_hat = num0 / den0;
  pe.tau_hat = pe.mu1_hat - pe.mu0_hat;
  return pe;
}

}  // namespace

Dataset Dataset::from_raw(Eigen::VectorXd y, const Eigen::MatrixXd& x_raw) {
  if (x_raw.rows() != y.size()) {
    fail(ErrorCode::kDimensionMismatch, "covariate rows must equal outcome length");
  }
  if (!y.allFinite() || !x_raw.allFinite()) fail(ErrorCode::kInvalidArgument, "non-finite data");
  Dataset ds;
  ds.y_ = std::move(y);
  ds.means_ = x_raw.rows() > 0 ? Eigen::VectorXd(x_raw.colwise().mean().transpose())
                               : Eigen::VectorXd::Zero(x_raw.cols());
  ds.x_ = x_raw.rowwise() - ds.means_.transpose();
  return ds;
}

Dataset Dataset::centered(Eigen::VectorXd y, Eigen::MatrixXd x) {
  if (x.rows() != y.size()) {
    fail(ErrorCode::kDimensionMismatch, "covariate rows must equal outcome length");
  }
  if (!y.allFinite() || !x.allFinite()) fail(ErrorCode::kInvalidArgument, "non-finite data");
  const double tol = 1e-9 * static_cast<double>(std::max<Eigen::Index>(y.size(), 1));
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double s = x.col(c).sum();
    if (std::abs(s) > tol) {
      std::ostringstream os;
      os << "covariate column " << c << " sums to " << s << ", not centered";
      fail(ErrorCode::kInvalidArgument, os.str());
    }
  }
  Dataset ds;
  ds.y_ = std::move(y);
  ds.x_ = std::move(x);
  ds.means_ = Eigen::VectorXd::Zero(ds.x_.cols());
  return ds;
}

Dataset Dataset::outcomes_only(Eigen::VectorXd y) {
  const auto n = y.size();
  return centered(std::move(y), Eigen::MatrixXd(n, 0));
}

Dataset Dataset::with_outcomes(Eigen::VectorXd y) const {
  if (y.size() != y_.size()) fail(ErrorCode::kDimensionMismatch, "outcome length changed");
  if (!y.allFinite()) fail(ErrorCode::kInvalidArgument, "non-finite outcomes");
  Dataset ds = *this;
  ds.y_ = std::move(y);
  return ds;
}

Dataset Dataset::with_degree_covariate(const BipartiteGraph& g) const {
  if (g.n() != n()) fail(ErrorCode::kDimensionMismatch, "graph and dataset disagree on n");
  Eigen::VectorXd degree(static_cast<Eigen::Index>(n()));
  for (Index i = 0; i < g.n(); ++i) degree(i) = static_cast<double>(g.outcome_degree(i));
  const double mean = n() > 0 ? degree.mean() : 0.0;
  Dataset ds = *this;
  ds.x_.conservativeResize(Eigen::NoChange, x_.cols() + 1);
  ds.x_.col(x_.cols()) = degree.array() - mean;
  ds.means_.conservativeResize(means_.size() + 1);
  ds.means_(means_.size()) = mean;
  return ds;
}

std::string_view to_string(CoefficientSource s) noexcept {
  switch (s) {
    case CoefficientSource::kOracle: return "oracle";
    case CoefficientSource::kEstimated: return "estimated";
    case CoefficientSource::kUser: return "user";
  }
  return "user";
}

AdjustmentCoefficients AdjustmentCoefficients::zero(std::size_t d) {
  AdjustmentCoefficients c;
  c.beta1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  c.beta0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  return c;
}

PointEstimate hajek(const BipartiteGraph& g, const Assignment& a, const Dataset& ds) {
  check_inputs(g, a, ds);
  return ratio_means(g, a, ds.y(), ds.y());
}

PointEstimate horvitz_thompson(const BipartiteGraph& g, const Assignment& a, const Dataset& ds) {
  check_inputs(g, a, ds);
  const Exposure e = exposures(g, a);
  const InverseWeights w = inverse_weights(g, a.p());
  PointEstimate pe;
  double sum1 = 0.0, sum0 = 0.0;
  for (Index i = 0; i < g.n(); ++i) {
    if (e.treated[i]) {
      sum1 += w.treated[i] * ds.y()(i);
      ++pe.n_treated_exposed;
    }
    if (e.control[i]) {
      sum0 += w.control[i] * ds.y()(i);
      ++pe.n_control_exposed;
    }
  }
  const double n = static_cast<double>(g.n());
  pe.mu1_hat = sum1 / n;
  pe.mu0_hat = sum0 / n;
  pe.tau_hat = pe.mu1_hat - pe.mu0_hat;
  return pe;
}

PointEstimate adjusted_hajek(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                             const AdjustmentCoefficients& coef) {
  check_inputs(g, a, ds);
  check_coef(ds, coef);
  const Eigen::VectorXd r1 = ds.y() - ds.x() * coef.beta1;
  const Eigen::VectorXd r0 = ds.y() - ds.x() * coef.beta0;
  return ratio_means(g, a, r1, r0);
}

Eigen::MatrixXd covariate_gram(const LambdaSet& ls, const Eigen::MatrixXd& x) {
  const Eigen::Index d = x.cols();
  Eigen::MatrixXd gram(2 * d, 2 * d);
  gram.topLeftCorner(d, d) = ls.gram(LambdaKind::kTreated, x, x);
  gram.bottomRightCorner(d, d) = ls.gram(LambdaKind::kControl, x, x);
  const Eigen::MatrixXd cross = ls.gram(LambdaKind::kCross, x, x);
  gram.topRightCorner(d, d) = cross;
  gram.bottomLeftCorner(d, d) = cross.transpose();
  return gram;
}

PinvSolution pinv_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs) {
  PinvSolution out;
  if (gram.size() == 0) {
    out.solution = Eigen::VectorXd::Zero(gram.cols());
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kPinvRelativeCutoff);
  out.rank = static_cast<std::size_t>(svd.rank());
  if (out.rank == 0) {
    out.solution = Eigen::VectorXd::Zero(gram.cols());
  } else {
    out.solution = svd.solve(rhs);
  }
  return out;
}

Eigen::VectorXd beta_rhs(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                         const LambdaSet& ls, double mu1, double mu0) {
  check_inputs(g, a, ds);
  if (ls.n() != g.n()) fail(ErrorCode::kDimensionMismatch, "lambda set built for a different graph");
  const Exposure e = exposures(g, a);
  const Eigen::MatrixXd& x = ds.x();
  const Eigen::Index d = x.cols();
  const Eigen::VectorXd& y = ds.y();
  Eigen::VectorXd top = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd bottom = Eigen::VectorXd::Zero(d);

  for (const LambdaEntry& en : ls.entries()) {
    const Index i = en.i, j = en.j;
    if (e.treated[i] && e.treated[j]) {
      const double inv = 1.0 / ls.treated_joint(en);
      const double w1 = ls.value(LambdaKind::kTreated, en) * inv;
      const double wc = ls.value(LambdaKind::kCross, en) * inv;
      // sum over (i, j) and, off the diagonal, (j, i)
      Eigen::VectorXd term = x.row(i).transpose() * (y(j) - mu1);
      if (i != j) term += x.row(j).transpose() * (y(i) - mu1);
      top += w1 * term;
      bottom += wc * term;
    }
    if (e.control[i] && e.control[j]) {
      const double inv = 1.0 / ls.control_joint(en);
      const double w0 = ls.value(LambdaKind::kControl, en) * inv;
      const double wc = ls.value(LambdaKind::kCross, en) * inv;
      Eigen::VectorXd term = x.row(i).transpose() * (y(j) - mu0);
      if (i != j) term += x.row(j).transpose() * (y(i) - mu0);
      top += wc * term;
      bottom += w0 * term;
    }
  }
  Eigen::VectorXd rhs(2 * d);
  rhs << top, bottom;
  return rhs;
}

AdjustmentCoefficients estimate_beta(const BipartiteGraph& g, const Assignment& a, const Dataset& ds,
                                     const LambdaSet& ls) {
  const PointEstimate pe = hajek(g, a, ds);
  const Eigen::VectorXd rhs = beta_rhs(g, a, ds, ls, pe.mu1_hat, pe.mu0_hat);
  const PinvSolution sol = pinv_solve(covariate_gram(ls, ds.x()), rhs);
  const Eigen::Index d = ds.x().cols();
  AdjustmentCoefficients c;
  c.beta1 = sol.solution.head(d);
  c.beta0 = sol.solution.tail(d);
  c.rank = sol.rank;
  c.source = CoefficientSource::kEstimated;
  return c;
}

Eigen::VectorXd oracle_rhs(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x) {
  pt.validate(ls.n());
  if (static_cast<std::size_t>(x.rows()) != ls.n()) {
    fail(ErrorCode::kDimensionMismatch, "covariate rows must equal n");
  }
  const Eigen::VectorXd y1c = pt.y1.array() - pt.y1.mean();
  const Eigen::VectorXd y0c = pt.y0.array() - pt.y0.mean();
  const Eigen::Index d = x.cols();
  Eigen::VectorXd rhs(2 * d);
  rhs.head(d) = ls.gram(LambdaKind::kTreated, x, y1c) + ls.gram(LambdaKind::kCross, x, y0c);
  rhs.tail(d) = ls.gram(LambdaKind::kControl, x, y0c) + ls.gram(LambdaKind::kCross, x, y1c);
  return rhs;
}

AdjustmentCoefficients oracle_beta(const LambdaSet& ls, const PotentialTable& pt, const Eigen::MatrixXd& x) {
  const Eigen::VectorXd rhs = oracle_rhs(ls, pt, x);
  const PinvSolution sol = pinv_solve(covariate_gram(ls, x), rhs);
  const Eigen::Index d = x.cols();
  AdjustmentCoefficients c;
  c.beta1 = sol.solution.head(d);
  c.beta0 = sol.solution.tail(d);
  c.rank = sol.rank;
  c.source = CoefficientSource::kOracle;
  return c;
}

}  // namespace bipexp
