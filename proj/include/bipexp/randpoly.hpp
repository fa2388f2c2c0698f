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

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "bipexp/graph.hpp"
#include "bipexp/rng.hpp"

namespace bipexp {

/// Multilinear polynomial in m i.i.d. centered variables,
///   Gamma = sum_s sum_{k1 < ... < ks} a_{k1..ks} z_k1 ... z_ks,
/// with coefficients keyed by strictly increasing index tuples. Symmetric
/// coefficients are therefore a storage invariant.
class RandomPolynomial {
 public:
  using Tuple = std::vector<Index>;

  explicit RandomPolynomial(std::size_t m) : m_(m) {}

  std::size_t m() const noexcept { return m_; }
  /// Largest order with a stored coefficient (0 if empty).
  std::size_t max_order() const noexcept;
  std::size_t num_terms() const noexcept;

  /// Stores a under the sorted form of tuple; a = 0 erases. Throws
  /// InvalidArgument on an empty tuple or a repeated index, IndexOutOfRange
  /// on an index >= m.
  void set(Tuple tuple, double a);
  /// Adds a to the stored coefficient.
  void add(Tuple tuple, double a);
  double coefficient(Tuple tuple) const;

  /// Terms of order s (1-based); empty map past max_order().
  const std::map<Tuple, double>& terms(std::size_t order) const;

  /// Throws DimensionMismatch unless z_tilde has length m.
  double evaluate(std::span<const double> z_tilde) const;

  /// sum_s (sum of squared order-s coefficients) * sigma2^s
  double exact_variance(double sigma2) const;

 private:
  Tuple canonical(Tuple tuple) const;

  std::size_t m_;
  std::vector<std::map<Tuple, double>> by_order_;
};

/// A mean-zero distribution for the z variables.
struct CenteredDistribution {
  std::function<double(Rng&)> draw;
  double variance = 0.0;

  /// z - p with z ~ Bernoulli(p).
  static CenteredDistribution bernoulli(double p);
};

struct CltDiagnostic {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  /// Kolmogorov-Smirnov distance between Gamma / sqrt(v_Gamma) and N(0,1).
  double ks_distance = 0.0;
  double standardized_mean = 0.0;
  double standardized_variance = 0.0;
  std::size_t reps = 0;
};

/// Throws InvalidReps for reps < 2 and DegenerateVariance when the exact
/// variance is zero.
CltDiagnostic clt_diagnostic(const RandomPolynomial& rp, const CenteredDistribution& dist, std::size_t reps,
                             Rng& rng);

}  // namespace bipexp
