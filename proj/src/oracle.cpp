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

#include "bipexp/oracle.hpp"

#include <cstdint>
#include <sstream>
#include <vector>

#include "bipexp/error.hpp"

namespace bipexp {

void for_each_assignment(std::size_t m, double p, const std::function<void(const Assignment&, double)>& f) {
  check_probability(p);
  if (m > kMaxEnumerationUnits) {
    std::ostringstream os;
    os << "exhaustive enumeration needs m <= " << kMaxEnumerationUnits << ", got m = " << m;
    fail(ErrorCode::kEnumerationGuardExceeded, os.str());
  }
  const std::uint32_t count = 1u << m;
  std::vector<std::uint8_t> z(m);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    std::size_t treated = 0;
    for (std::size_t k = 0; k < m; ++k) {
      z[k] = static_cast<std::uint8_t>((bits >> k) & 1u);
      treated += z[k];
    }
    const double prob = int_power(p, treated) * int_power(1.0 - p, m - treated);
    f(Assignment(z, p), prob);
  }
}

ExactMoments exact_moments(const BipartiteGraph& g, double p, const PotentialTable& pt, const Statistic& s) {
  pt.validate(g.n());
  ExactMoments mo;
  for_each_assignment(g.m(), p, [&](const Assignment& a, double prob) {
    const double v = s(a, pt.observe(g, a));
    mo.total_probability += prob;
    mo.mean += prob * v;
  });
  // Two passes: the variance is summed over centered values.
  for_each_assignment(g.m(), p, [&](const Assignment& a, double prob) {
    const double dv = s(a, pt.observe(g, a)) - mo.mean;
    mo.variance += prob * dv * dv;
  });
  return mo;
}

double exact_expectation(const BipartiteGraph& g, double p, const PotentialTable& pt, const Statistic& s) {
  return exact_moments(g, p, pt, s).mean;
}

double exact_variance(const BipartiteGraph& g, double p, const PotentialTable& pt, const Statistic& s) {
  return exact_moments(g, p, pt, s).variance;
}

}  // namespace bipexp
