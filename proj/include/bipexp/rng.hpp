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
#include <random>

namespace bipexp {

/// Seed for stream `stream` of a master seed. Streams are independent of
/// the order in which they are requested, so replication r always sees the
/// same draws whatever the thread layout.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) noexcept;

class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master_seed, std::uint64_t stream)
      : engine_(derive_seed(master_seed, stream)) {}

  /// Uniform on [0, 1).
  double uniform() { return unit_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }
  bool bernoulli(double p) { return uniform() < p; }
  double normal(double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace bipexp
