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

#include "bipexp/sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "bipexp/design.hpp"
#include "bipexp/error.hpp"
#include "bipexp/estimator.hpp"
#include "bipexp/lambda.hpp"
#include "bipexp/population.hpp"
#include "bipexp/variance.hpp"

namespace bipexp {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct Draw {
  bool ok = false;
  double tau_hat = 0.0;
  double se_hat = 0.0;
  bool covered = false;
  bool rejected = false;
  int clamped = 0;
};

struct Replication {
  Draw unadjusted;
  Draw adjusted;
};

Draw summarize(const PointEstimate& pe, const VarianceEstimate& ve, double alpha, double tau, double tau0) {
  const ConfidenceInterval ci = confidence_interval(pe.tau_hat, ve, alpha);
  Draw d;
  d.ok = true;
  d.tau_hat = pe.tau_hat;
  d.se_hat = std::sqrt(ve.v_ub_hat);
  d.covered = !reject_null(ci, tau);
  d.rejected = reject_null(ci, tau0);
  d.clamped = ve.clamped_count();
  return d;
}

SimRow aggregate(std::string name, const std::vector<Replication>& reps, Draw Replication::*member, double tau) {
  SimRow row;
  row.estimator = std::move(name);
  double sum = 0.0, sum_se = 0.0;
  std::size_t covered = 0, rejected = 0;
  for (const Replication& r : reps) {
    const Draw& d = r.*member;
    if (!d.ok) {
      ++row.degenerate_draws;
      continue;
    }
    ++row.valid_draws;
    sum += d.tau_hat;
    sum_se += d.se_hat;
    covered += d.covered;
    rejected += d.rejected;
    row.clamped_components += static_cast<std::size_t>(d.clamped);
  }
  if (row.valid_draws == 0) return row;
  const double k = static_cast<double>(row.valid_draws);
  const double mean = sum / k;
  row.bias = mean - tau;
  row.se_hat_mean = sum_se / k;
  row.coverage = static_cast<double>(covered) / k;
  row.power = static_cast<double>(rejected) / k;

  double ss = 0.0, ss_se = 0.0;
  for (const Replication& r : reps) {
    const Draw& d = r.*member;
    if (!d.ok) continue;
    ss += (d.tau_hat - mean) * (d.tau_hat - mean);
    ss_se += (d.se_hat - row.se_hat_mean) * (d.se_hat - row.se_hat_mean);
  }
  if (row.valid_draws >= 2) {
    row.se_defined = true;
    row.se = std::sqrt(ss / (k - 1.0));
    row.se_mc_error = row.se / std::sqrt(2.0 * (k - 1.0));
    row.se_hat_mc_error = std::sqrt(ss_se / (k - 1.0)) / std::sqrt(k);
  } else {
    row.se = std::numeric_limits<double>::quiet_NaN();
    row.se_mc_error = std::numeric_limits<double>::quiet_NaN();
    row.se_hat_mc_error = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::kR1: return "R1";
    case Regime::kR2: return "R2";
    case Regime::kR3: return "R3";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  const std::string u = upper(text);
  if (u == "R1") return Regime::kR1;
  if (u == "R2") return Regime::kR2;
  if (u == "R3") return Regime::kR3;
  fail(ErrorCode::kInvalidConfig, "unknown regime '" + std::string(text) + "' (valid: R1, R2, R3)");
}

std::string_view to_string(NoiseScale s) noexcept {
  return s == NoiseScale::kVariance ? "variance" : "sd";
}

NoiseScale parse_noise_scale(std::string_view text) {
  if (text == "variance") return NoiseScale::kVariance;
  if (text == "sd") return NoiseScale::kStdDev;
  fail(ErrorCode::kInvalidConfig, "unknown noise_scale '" + std::string(text) + "' (valid: variance, sd)");
}

void DGPConfig::validate() const {
  auto bad = [](const std::string& msg) { fail(ErrorCode::kInvalidConfig, msg); };
  if (n == 0) bad("n must be positive");
  if (m == 0) bad("m must be positive");
  if (max_degree == 0 || max_degree > m) bad("max_degree must lie in [1, m]");
  if (!(p > 0.0 && p < 1.0)) bad("p must lie strictly between 0 and 1");
  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha must lie strictly between 0 and 1");
  if (reps == 0) bad("reps must be at least 1");
  if (gamma.empty()) bad("gamma must have at least one entry");
  for (double gk : gamma) {
    if (!std::isfinite(gk)) bad("gamma entries must be finite");
  }
  if (!std::isfinite(tau0)) bad("tau0 must be finite");
}

Population generate_population(const DGPConfig& cfg, Rng& rng) {
  cfg.validate();
  BipartiteGraph g = generate_random(cfg.n, cfg.m, cfg.max_degree, rng);
  const auto d = static_cast<Eigen::Index>(cfg.gamma.size());
  const auto n = static_cast<Eigen::Index>(cfg.n);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rng.uniform(0.0, 10.0);
  }
  const Eigen::VectorXd gamma = Eigen::Map<const Eigen::VectorXd>(cfg.gamma.data(), d);
  const Eigen::VectorXd lin = x * gamma;

  Eigen::VectorXd treated_mean(n);
  double noise = 15.0;
  switch (cfg.regime) {
    case Regime::kR1:
      treated_mean = lin.array() + 5.5;
      noise = 10.0;
      break;
    case Regime::kR2:
      for (Eigen::Index i = 0; i < n; ++i) treated_mean(i) = rng.uniform(0.0, 12.0) + lin(i);
      break;
    case Regime::kR3:
      for (Eigen::Index i = 0; i < n; ++i) {
        treated_mean(i) = 0.5 * static_cast<double>(g.outcome_degree(static_cast<Index>(i))) + 1.1 * lin(i);
      }
      break;
  }
  const double sd = cfg.noise_scale == NoiseScale::kVariance ? std::sqrt(noise) : noise;

  PotentialTable pt;
  pt.y1.resize(n);
  pt.y0.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) pt.y1(i) = rng.normal(treated_mean(i), sd);
  for (Eigen::Index i = 0; i < n; ++i) pt.y0(i) = rng.normal(lin(i), sd);
  return Population{std::move(g), std::move(pt), std::move(x)};
}

SimReport run(const DGPConfig& cfg, std::size_t threads) {
  cfg.validate();
  Rng pop_rng(cfg.master_seed, kPopulationStream);
  const Population pop = generate_population(cfg, pop_rng);
  const BipartiteGraph& g = pop.graph;
  const LambdaSet ls = LambdaSet::build(g, cfg.p);

  Dataset base = Dataset::from_raw(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg.n)), pop.covariates);
  if (cfg.degree_covariate) base = base.with_degree_covariate(g);

  SimReport report;
  report.config = cfg;
  report.tau = true_estimand(pop.potentials).tau;
  report.tau0 = cfg.null_at_truth ? report.tau : cfg.tau0;

  std::vector<Replication> results(cfg.reps);
  auto work = [&](std::size_t r) {
    Rng rng(cfg.master_seed, r);
    const Assignment a = sample_assignment(cfg.p, cfg.m, rng);
    const Dataset ds = base.with_outcomes(pop.potentials.observe(g, a));
    Replication& out = results[r];
    try {
      const PointEstimate pe = hajek(g, a, ds);
      out.unadjusted = summarize(pe, variance_estimate(g, a, ds, ls, pe), cfg.alpha, report.tau, report.tau0);
      const AdjustmentCoefficients coef = estimate_beta(g, a, ds, ls);
      const PointEstimate pa = adjusted_hajek(g, a, ds, coef);
      out.adjusted = summarize(pa, variance_estimate(g, a, ds, ls, pa, coef), cfg.alpha, report.tau,
                               report.tau0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoTreatedExposure && e.code() != ErrorCode::kNoControlExposure) throw;
    }
  };

  std::size_t workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min(workers, cfg.reps);
  report.threads_used = workers;
  if (workers <= 1) {
    for (std::size_t r = 0; r < cfg.reps; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = t; r < cfg.reps; r += workers) work(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  report.rows.push_back(aggregate("unadjusted", results, &Replication::unadjusted, report.tau));
  report.rows.push_back(aggregate("adjusted", results, &Replication::adjusted, report.tau));
  if (report.rows[0].valid_draws == 0) {
    std::ostringstream os;
    os << "all " << cfg.reps << " replications left an arm without exposed units";
    fail(ErrorCode::kAllDrawsDegenerate, os.str());
  }
  return report;
}

}  // namespace bipexp
