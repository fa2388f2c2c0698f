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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipexp/estimator.hpp"
#include "bipexp/graph.hpp"
#include "bipexp/io.hpp"
#include "bipexp/sim.hpp"
#include "bipexp/variance.hpp"

namespace bipexp {

/// Version stamped into every JSON and CSV output.
inline constexpr int kFormatVersion = 1;

struct EstimateOptions {
  double p = 0.5;
  double alpha = 0.05;
  bool adjust = false;
  bool degree_covariate = false;
};

struct EstimateReport {
  EstimateOptions options;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t num_treated_interventions = 0;
  std::string estimator;
  PointEstimate point;
  VarianceEstimate variance;
  ConfidenceInterval ci;
  std::optional<AdjustmentCoefficients> beta;
  std::vector<std::string> covariate_names;
  SparsityReport sparsity;
  /// Filled by callers that read files: name -> sha256.
  std::map<std::string, std::string> digests;
};

/// Hájek (or, with adjust, covariate-adjusted Hájek) estimate, conservative
/// variance and Wald interval for one observed experiment.
EstimateReport run_estimate(const BipartiteGraph& g, const ObservedData& data, const std::vector<std::uint8_t>& z,
                            const EstimateOptions& opt);
std::string to_json(const EstimateReport& r);

struct ValidationReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.5;
  SparsityReport sparsity;
  bool psd_checked = false;
  double psd_min_eigenvalue = 0.0;
  double psd_tolerance = 1e-8;
  /// Set when the PSD check was skipped.
  std::string notice;
  bool ok = true;
};

/// Sparsity summary plus, for n within the dense guard, the minimum
/// eigenvalue of the combined dependence matrix.
ValidationReport run_validation(const BipartiteGraph& g, double p);
std::string to_json(const ValidationReport& r);
std::string to_text(const ValidationReport& r);

/// Full config echo, true tau and one object per estimator row.
std::string to_json(const SimReport& r);
/// Header plus one row per estimator.
std::string to_csv(const SimReport& r);

}  // namespace bipexp
