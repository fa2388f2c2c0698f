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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bipexp/graph.hpp"
#include "bipexp/potential.hpp"
#include "bipexp/rng.hpp"

namespace bipexp {

/// Outcome laws, with X ~ Uniform[0,10]^d and noise e:
///   R1: Y(1) = 5.5 + g'X + e,          Y(0) = g'X + e, noise parameter 10
///   R2: Y(1) = a_i + g'X + e,          Y(0) = g'X + e, a_i ~ U[0,12], 15
///   R3: Y(1) = 0.5 deg(i) + 1.1 g'X + e, Y(0) = g'X + e, 15
enum class Regime { kR1, kR2, kR3 };
std::string_view to_string(Regime r) noexcept;
/// Accepts R1/R2/R3 (case-insensitive). Throws InvalidConfig listing them.
Regime parse_regime(std::string_view text);

/// How the second parameter of the Gaussian noise law is read.
enum class NoiseScale { kVariance, kStdDev };
std::string_view to_string(NoiseScale s) noexcept;
NoiseScale parse_noise_scale(std::string_view text);

struct DGPConfig {
  Regime regime = Regime::kR1;
  std::size_t n = 5000;
  std::size_t m = 500;
  std::size_t max_degree = 5;
  double p = 0.5;
  std::vector<double> gamma{5.0, 5.0};
  std::size_t reps = 1000;
  double alpha = 0.05;
  std::uint64_t master_seed = 20240601;
  /// Append the outcome degree as a covariate in the adjusted estimator.
  bool degree_covariate = false;
  NoiseScale noise_scale = NoiseScale::kStdDev;
  /// Power is the rejection rate of H0: tau = tau0. With null_at_truth the
  /// true tau of the generated population is used instead.
  double tau0 = 0.0;
  bool null_at_truth = false;

  /// Throws InvalidConfig.
  void validate() const;
};

struct Population {
  BipartiteGraph graph;
  PotentialTable potentials;
  /// Raw covariates (n x d), before centering.
  Eigen::MatrixXd covariates;
};

/// Graph, covariates and potential outcomes, in that draw order.
Population generate_population(const DGPConfig& cfg, Rng& rng);

/// Stream reserved for the population draw; replication r uses stream r.
inline constexpr std::uint64_t kPopulationStream = ~std::uint64_t{0};

struct SimRow {
  std::string estimator;
  double bias = 0.0;
  /// Sample SD of tau_hat over valid draws; NaN when fewer than two.
  double se = 0.0;
  bool se_defined = false;
  double se_hat_mean = 0.0;
  double coverage = 0.0;
  double power = 0.0;
  std::size_t valid_draws = 0;
  std::size_t degenerate_draws = 0;
  /// Variance components clamped at zero, summed over draws.
  std::size_t clamped_components = 0;
  /// Monte Carlo standard errors of se and se_hat_mean.
  double se_mc_error = 0.0;
  double se_hat_mc_error = 0.0;
};

struct SimReport {
  DGPConfig config;
  double tau = 0.0;
  double tau0 = 0.0;
  std::vector<SimRow> rows;  // unadjusted, adjusted
  std::size_t threads_used = 1;
};

/// Draws the population once, then reps assignments. Results do not depend
/// on the thread count (0 = hardware concurrency). Throws AllDrawsDegenerate.
SimReport run(const DGPConfig& cfg, std::size_t threads = 0);

}  // namespace bipexp
