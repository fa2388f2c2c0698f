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

#include "bipexp/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "bipexp/design.hpp"
#include "bipexp/error.hpp"

namespace bipexp {
namespace {

void check_dense_size(std::size_t n) {
  if (n > LambdaSet::kDenseGuard) {
    fail(ErrorCode::kSizeGuardExceeded, "dense check needs n <= " + std::to_string(LambdaSet::kDenseGuard) +
                                            ", got n = " + std::to_string(n));
  }
}

// Symmetric dense matrix of pairwise overlap counts.
Eigen::MatrixXi overlap_matrix(const BipartiteGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXi theta = Eigen::MatrixXi::Zero(n, n);
  for (const auto& pr : g.overlapping_pairs()) {
    theta(pr.i, pr.j) = static_cast<int>(pr.overlap);
    theta(pr.j, pr.i) = static_cast<int>(pr.overlap);
  }
  return theta;
}

void for_each_subset(std::span<const Index> items, std::size_t k, std::vector<Index>& current,
                     std::size_t start, const auto& visit) {
  if (current.size() == k) {
    visit(current);
    return;
  }
  for (std::size_t t = start; t + (k - current.size()) <= items.size(); ++t) {
    current.push_back(items[t]);
    for_each_subset(items, k, current, t + 1, visit);
    current.pop_back();
  }
}

}  // namespace

LambdaSet LambdaSet::build(const BipartiteGraph& g, double p) {
  check_probability(p);
  LambdaSet ls;
  ls.p_ = p;
  ls.n_ = g.n();
  std::size_t max_degree = 0;
  for (Index i = 0; i < g.n(); ++i) max_degree = std::max(max_degree, g.outcome_degree(i));

  for (const auto& pr : g.overlapping_pairs()) {
    const auto uni = static_cast<Index>(g.outcome_degree(pr.i) + g.outcome_degree(pr.j) - pr.overlap);
    ls.entries_.push_back({pr.i, pr.j, pr.overlap, uni});
  }

  ls.treated_lambda_.resize(max_degree + 1);
  ls.control_lambda_.resize(max_degree + 1);
  for (std::size_t t = 0; t <= max_degree; ++t) {
    ls.treated_lambda_[t] = int_power(1.0 / p, t) - 1.0;
    ls.control_lambda_[t] = int_power(1.0 / (1.0 - p), t) - 1.0;
  }
  ls.treated_joint_.resize(2 * max_degree + 1);
  ls.control_joint_.resize(2 * max_degree + 1);
  for (std::size_t t = 0; t <= 2 * max_degree; ++t) {
    ls.treated_joint_[t] = int_power(p, t);
    ls.control_joint_[t] = int_power(1.0 - p, t);
  }
  return ls;
}

Eigen::MatrixXd LambdaSet::dense(LambdaKind kind) const {
  check_dense_size(n_);
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : entries_) {
    out(e.i, e.j) = value(kind, e);
    out(e.j, e.i) = value(kind, e);
  }
  return out;
}

double LambdaSet::bilinear(LambdaKind kind, const Eigen::Ref<const Eigen::VectorXd>& u,
                           const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (static_cast<std::size_t>(u.size()) != n_ || static_cast<std::size_t>(v.size()) != n_) {
    fail(ErrorCode::kDimensionMismatch, "vectors must have length n = " + std::to_string(n_));
  }
  double total = 0.0;
  for (const auto& e : entries_) {
    const double w = value(kind, e);
    if (e.i == e.j) {
      total += w * u(e.i) * v(e.i);
    } else {
      total += w * (u(e.i) * v(e.j) + u(e.j) * v(e.i));
    }
  }
  return total;
}

Eigen::MatrixXd LambdaSet::gram(LambdaKind kind, const Eigen::Ref<const Eigen::MatrixXd>& a,
                                const Eigen::Ref<const Eigen::MatrixXd>& b) const {
  if (static_cast<std::size_t>(a.rows()) != n_ || static_cast<std::size_t>(b.rows()) != n_) {
    fail(ErrorCode::kDimensionMismatch, "blocks must have n = " + std::to_string(n_) + " rows");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.cols(), b.cols());
  for (const auto& e : entries_) {
    const double w = value(kind, e);
    out.noalias() += w * a.row(e.i).transpose() * b.row(e.j);
    if (e.i != e.j) out.noalias() += w * a.row(e.j).transpose() * b.row(e.i);
  }
  return out;
}

double psd_min_eigenvalue(const LambdaSet& ls) {
  check_dense_size(ls.n());
  const auto n = static_cast<Eigen::Index>(ls.n());
  Eigen::MatrixXd block(2 * n, 2 * n);
  block.topLeftCorner(n, n) = ls.dense(LambdaKind::kTreated);
  block.bottomRightCorner(n, n) = ls.dense(LambdaKind::kControl);
  const Eigen::MatrixXd cross = ls.dense(LambdaKind::kCross);
  block.topRightCorner(n, n) = cross;
  block.bottomLeftCorner(n, n) = cross;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double theta_power_min_eigenvalue(const BipartiteGraph& g, double base) {
  check_probability(base);
  check_dense_size(g.n());
  const Eigen::MatrixXi theta = overlap_matrix(g);
  const Eigen::MatrixXd powered =
      theta.unaryExpr([base](int t) { return int_power(1.0 / base, static_cast<std::size_t>(t)); });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(powered, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double binomial_decomposition_residual(const BipartiteGraph& g, double p, std::size_t max_k) {
  check_probability(p);
  if (g.n() * g.m() > 10000) {
    fail(ErrorCode::kSizeGuardExceeded,
         "binomial decomposition needs n*m <= 1e4, got " + std::to_string(g.n() * g.m()));
  }
  const auto n = static_cast<Eigen::Index>(g.n());
  const Eigen::MatrixXi theta = overlap_matrix(g);
  Eigen::MatrixXd residual =
      theta.unaryExpr([p](int t) { return int_power(1.0 / p, static_cast<std::size_t>(t)); });
  residual.array() -= 1.0;

  const double ratio = (1.0 - p) / p;
  for (std::size_t k = 1; k <= max_k; ++k) {
    // Rows of G_k: the k-subsets of intervention units that some outcome unit
    // covers entirely; all other subsets give zero rows.
    std::map<std::vector<Index>, Eigen::Index> rows;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> ones;
    std::vector<Index> current;
    for (Index i = 0; i < g.n(); ++i) {
      for_each_subset(g.outcome_neighbors(i), k, current, 0, [&](const std::vector<Index>& subset) {
        auto [it, inserted] = rows.try_emplace(subset, static_cast<Eigen::Index>(rows.size()));
        ones.emplace_back(it->second, static_cast<Eigen::Index>(i));
      });
    }
    if (rows.empty()) continue;
    Eigen::MatrixXd membership = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n);
    for (const auto& [r, c] : ones) membership(r, c) = 1.0;
    residual.noalias() -= int_power(ratio, k) * (membership.transpose() * membership);
  }
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace bipexp
