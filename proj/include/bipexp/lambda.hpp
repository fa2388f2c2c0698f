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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bipexp/graph.hpp"

namespace bipexp {

/// The three pairwise dependence matrices over outcome units:
///   kTreated: p^{-overlap} - 1
///   kControl: (1-p)^{-overlap} - 1
///   kCross:   1 if the units share an intervention unit, else 0
/// All three vanish off the overlapping-pair support.
enum class LambdaKind { kTreated, kControl, kCross };

struct LambdaEntry {
  Index i;
  Index j;  // i <= j
  Index overlap;
  Index union_size;
};

/// Sparse storage of the dependence matrices: one entry per overlapping pair
/// (i <= j) with its overlap and union sizes, plus power tables for p.
class LambdaSet {
 public:
  static LambdaSet build(const BipartiteGraph& g, double p);

  double p() const noexcept { return p_; }
  std::size_t n() const noexcept { return n_; }
  std::span<const LambdaEntry> entries() const noexcept { return entries_; }

  double value(LambdaKind kind, const LambdaEntry& e) const noexcept {
    switch (kind) {
      case LambdaKind::kTreated: return treated_lambda_[e.overlap];
      case LambdaKind::kControl: return control_lambda_[e.overlap];
      case LambdaKind::kCross: return 1.0;
    }
    return 0.0;
  }
  /// p^{|N(i) ∪ N(j)|}
  double treated_joint(const LambdaEntry& e) const noexcept { return treated_joint_[e.union_size]; }
  /// (1-p)^{|N(i) ∪ N(j)|}
  double control_joint(const LambdaEntry& e) const noexcept { return control_joint_[e.union_size]; }

  /// Dense n x n copy, for small-instance checks only (n <= kDenseGuard).
  Eigen::MatrixXd dense(LambdaKind kind) const;

  /// sum_{i,j} u_i M_ij v_j over the stored support (both orders).
  double bilinear(LambdaKind kind, const Eigen::Ref<const Eigen::VectorXd>& u,
                  const Eigen::Ref<const Eigen::VectorXd>& v) const;
  /// A^T M B for column blocks A (n x a) and B (n x b).
  Eigen::MatrixXd gram(LambdaKind kind, const Eigen::Ref<const Eigen::MatrixXd>& a,
                       const Eigen::Ref<const Eigen::MatrixXd>& b) const;

  static constexpr std::size_t kDenseGuard = 2000;

 private:
  double p_ = 0.5;
  std::size_t n_ = 0;
  std::vector<LambdaEntry> entries_;
  std::vector<double> treated_lambda_;
  std::vector<double> control_lambda_;
  std::vector<double> treated_joint_;
  std::vector<double> control_joint_;
};

/// Smallest eigenvalue of the 2n x 2n block matrix [[L1, Lc], [Lc, L0]].
/// Throws SizeGuardExceeded when n > LambdaSet::kDenseGuard.
double psd_min_eigenvalue(const LambdaSet& ls);

/// Smallest eigenvalue of the element-wise power base^{-[Theta]} where Theta
/// holds pairwise overlap counts. Same size guard.
double theta_power_min_eigenvalue(const BipartiteGraph& g, double base);

/// max |p^{-[Theta]} - J - sum_{k=1..max_k} ((1-p)/p)^k G_k^T G_k| where G_k
/// is the k-subset membership matrix of intervention units. Zero once
/// max_k reaches the largest outcome degree. Requires n*m <= 1e4.
double binomial_decomposition_residual(const BipartiteGraph& g, double p, std::size_t max_k);

}  // namespace bipexp
