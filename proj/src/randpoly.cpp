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

#include "bipexp/randpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bipexp/design.hpp"
#include "bipexp/error.hpp"
#include "bipexp/variance.hpp"

namespace bipexp {
namespace {

const std::map<RandomPolynomial::Tuple, double> kNoTerms;

// All terms flattened into index and coefficient arrays for the Monte Carlo loop.
struct FlatPolynomial {
  std::vector<std::size_t> offsets{0};
  std::vector<Index> indices;
  std::vector<double> coeffs;

  explicit FlatPolynomial(const RandomPolynomial& rp) {
    for (std::size_t s = 1; s <= rp.max_order(); ++s) {
      for (const auto& [tuple, a] : rp.terms(s)) {
        indices.insert(indices.end(), tuple.begin(), tuple.end());
        offsets.push_back(indices.size());
        coeffs.push_back(a);
      }
    }
  }

  double evaluate(const std::vector<double>& z) const {
    double total = 0.0;
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      double term = coeffs[t];
      for (std::size_t q = offsets[t]; q < offsets[t + 1]; ++q) term *= z[indices[q]];
      total += term;
    }
    return total;
  }
};

}  // namespace

std::size_t RandomPolynomial::max_order() const noexcept {
  std::size_t s = by_order_.size();
  while (s > 0 && by_order_[s - 1].empty()) --s;
  return s;
}

std::size_t RandomPolynomial::num_terms() const noexcept {
  std::size_t total = 0;
  for (const auto& level : by_order_) total += level.size();
  return total;
}

RandomPolynomial::Tuple RandomPolynomial::canonical(Tuple tuple) const {
  if (tuple.empty()) fail(ErrorCode::kInvalidArgument, "coefficient tuple must be non-empty");
  std::sort(tuple.begin(), tuple.end());
  if (std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end()) {
    fail(ErrorCode::kInvalidArgument, "coefficient tuple repeats an index");
  }
  if (tuple.back() >= m_) {
    std::ostringstream os;
    os << "tuple index " << tuple.back() << " out of range for m = " << m_;
    fail(ErrorCode::kIndexOutOfRange, os.str());
  }
  return tuple;
}

void RandomPolynomial::set(Tuple tuple, double a) {
  tuple = canonical(std::move(tuple));
  const std::size_t s = tuple.size();
  if (a == 0.0) {
    if (s <= by_order_.size()) by_order_[s - 1].erase(tuple);
    return;
  }
  if (by_order_.size() < s) by_order_.resize(s);
  by_order_[s - 1][std::move(tuple)] = a;
}

void RandomPolynomial::add(Tuple tuple, double a) {
  tuple = canonical(std::move(tuple));
  const double current = coefficient(tuple);
  set(std::move(tuple), current + a);
}

double RandomPolynomial::coefficient(Tuple tuple) const {
  tuple = canonical(std::move(tuple));
  if (tuple.size() > by_order_.size()) return 0.0;
  const auto& level = by_order_[tuple.size() - 1];
  const auto it = level.find(tuple);
  return it == level.end() ? 0.0 : it->second;
}

const std::map<RandomPolynomial::Tuple, double>& RandomPolynomial::terms(std::size_t order) const {
  if (order == 0 || order > by_order_.size()) return kNoTerms;
  return by_order_[order - 1];
}

double RandomPolynomial::evaluate(std::span<const double> z_tilde) const {
  if (z_tilde.size() != m_) {
    std::ostringstream os;
    os << "z has length " << z_tilde.size() << ", polynomial has m = " << m_;
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
  double total = 0.0;
  for (const auto& level : by_order_) {
    for (const auto& [tuple, a] : level) {
      double term = a;
      for (Index k : tuple) term *= z_tilde[k];
      total += term;
    }
  }
  return total;
}

double RandomPolynomial::exact_variance(double sigma2) const {
  double total = 0.0;
  double power = 1.0;
  for (const auto& level : by_order_) {
    power *= sigma2;
    double squares = 0.0;
    for (const auto& [tuple, a] : level) squares += a * a;
    total += squares * power;
  }
  return total;
}

CenteredDistribution CenteredDistribution::bernoulli(double p) {
  check_probability(p);
  return {[p](Rng& rng) { return (rng.bernoulli(p) ? 1.0 : 0.0) - p; }, p * (1.0 - p)};
}

CltDiagnostic clt_diagnostic(const RandomPolynomial& rp, const CenteredDistribution& dist, std::size_t reps,
                             Rng& rng) {
  if (reps < 2) {
    std::ostringstream os;
    os << "clt diagnostic needs at least 2 replications, got " << reps;
    fail(ErrorCode::kInvalidReps, os.str());
  }
  const double v = rp.exact_variance(dist.variance);
  if (!(v > 0.0)) fail(ErrorCode::kDegenerateVariance, "random polynomial has zero variance");

  const FlatPolynomial flat(rp);
  const double scale = 1.0 / std::sqrt(v);
  std::vector<double> z(rp.m());
  std::vector<double> w(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    for (double& zk : z) zk = dist.draw(rng);
    w[r] = flat.evaluate(z) * scale;
  }

  const double nr = static_cast<double>(reps);
  double mean = 0.0;
  for (double x : w) mean += x;
  mean /= nr;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : w) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= nr;
  m3 /= nr;
  m4 /= nr;

  CltDiagnostic out;
  out.reps = reps;
  out.standardized_mean = mean;
  out.standardized_variance = m2 * nr / (nr - 1.0);
  out.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  out.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;

  std::sort(w.begin(), w.end());
  double ks = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const double f = normal_cdf(w[r]);
    ks = std::max({ks, static_cast<double>(r + 1) / nr - f, f - static_cast<double>(r) / nr});
  }
  out.ks_distance = ks;
  return out;
}

}  // namespace bipexp
