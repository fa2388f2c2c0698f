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

#include "bipexp/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "bipexp/design.hpp"
#include "bipexp/error.hpp"
#include "bipexp/lambda.hpp"

namespace bipexp {
namespace {

using nlohmann::json;

json sparsity_json(const SparsityReport& s) {
  return {{"max_outcome_degree", s.max_outcome_degree},
          {"max_intervention_degree", s.max_intervention_degree},
          {"max_connectivity", s.max_connectivity},
          {"isolated_intervention_units", s.isolated_intervention_units},
          {"overlapping_pairs", s.overlapping_pairs},
          {"offdiagonal_overlapping_pairs", s.offdiagonal_overlapping_pairs}};
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

json config_json(const DGPConfig& c) {
  return {{"regime", std::string(to_string(c.regime))},
          {"n", c.n},
          {"m", c.m},
          {"max_degree", c.max_degree},
          {"p", c.p},
          {"gamma", c.gamma},
          {"reps", c.reps},
          {"alpha", c.alpha},
          {"master_seed", c.master_seed},
          {"degree_covariate", c.degree_covariate},
          {"noise_scale", std::string(to_string(c.noise_scale))},
          {"tau0", c.tau0},
          {"null_at_truth", c.null_at_truth}};
}

// NaN becomes null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

EstimateReport run_estimate(const BipartiteGraph& g, const ObservedData& data, const std::vector<std::uint8_t>& z,
                            const EstimateOptions& opt) {
  check_probability(opt.p);
  if (static_cast<std::size_t>(data.y.size()) != g.n()) {
    std::ostringstream os;
    os << "data has " << data.y.size() << " outcome units, graph has " << g.n();
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
  if (z.size() != g.m()) {
    std::ostringstream os;
    os << "assignment has " << z.size() << " intervention units, graph has " << g.m();
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
  const Assignment a(z, opt.p);
  Dataset ds = Dataset::from_raw(data.y, data.x);
  std::vector<std::string> names = data.covariate_names;
  if (opt.degree_covariate) {
    ds = ds.with_degree_covariate(g);
    names.push_back("degree");
  }

  EstimateReport r;
  r.options = opt;
  r.n = g.n();
  r.m = g.m();
  r.d = ds.d();
  r.num_treated_interventions = a.num_treated();
  r.covariate_names = std::move(names);
  r.sparsity = sparsity_report(g);

  const LambdaSet ls = LambdaSet::build(g, opt.p);
  if (opt.adjust) {
    const AdjustmentCoefficients coef = estimate_beta(g, a, ds, ls);
    r.estimator = "adjusted_hajek";
    r.point = adjusted_hajek(g, a, ds, coef);
    r.variance = variance_estimate(g, a, ds, ls, r.point, coef);
    r.beta = coef;
  } else {
    r.estimator = "hajek";
    r.point = hajek(g, a, ds);
    r.variance = variance_estimate(g, a, ds, ls, r.point);
  }
  r.ci = confidence_interval(r.point.tau_hat, r.variance, opt.alpha);
  return r;
}

std::string to_json(const EstimateReport& r) {
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "estimate";
  j["estimator"] = r.estimator;
  j["options"] = {{"p", r.options.p},
                  {"alpha", r.options.alpha},
                  {"adjust", r.options.adjust},
                  {"degree_covariate", r.options.degree_covariate}};
  j["tau_hat"] = r.point.tau_hat;
  j["mu1_hat"] = r.point.mu1_hat;
  j["mu0_hat"] = r.point.mu0_hat;
  j["v1_hat"] = r.variance.v1_hat;
  j["v0_hat"] = r.variance.v0_hat;
  j["v_ub_hat"] = r.variance.v_ub_hat;
  j["clamped"] = {{"v1", r.variance.v1_clamped}, {"v0", r.variance.v0_clamped}};
  j["ci"] = {{"lower", r.ci.lower}, {"upper", r.ci.upper}, {"level", r.ci.level}, {"z_quantile", r.ci.z_quantile}};
  j["counts"] = {{"n", r.n},
                 {"m", r.m},
                 {"d", r.d},
                 {"treated_interventions", r.num_treated_interventions},
                 {"treated_exposed", r.point.n_treated_exposed},
                 {"control_exposed", r.point.n_control_exposed}};
  j["covariate_names"] = r.covariate_names;
  if (r.beta) {
    j["beta_hat"] = {{"beta1", vector_json(r.beta->beta1)},
                     {"beta0", vector_json(r.beta->beta0)},
                     {"rank", r.beta->rank},
                     {"source", std::string(to_string(r.beta->source))}};
  }
  j["sparsity"] = sparsity_json(r.sparsity);
  j["input_digests"] = r.digests;
  return j.dump(2) + "\n";
}

ValidationReport run_validation(const BipartiteGraph& g, double p) {
  check_probability(p);
  ValidationReport r;
  r.n = g.n();
  r.m = g.m();
  r.p = p;
  r.sparsity = sparsity_report(g);
  if (g.n() <= LambdaSet::kDenseGuard) {
    r.psd_checked = true;
    r.psd_min_eigenvalue = psd_min_eigenvalue(LambdaSet::build(g, p));
    r.ok = r.psd_min_eigenvalue >= -r.psd_tolerance;
  } else {
    std::ostringstream os;
    os << "PSD check skipped: n = " << g.n() << " exceeds the dense size guard " << LambdaSet::kDenseGuard;
    r.notice = os.str();
  }
  return r;
}

std::string to_json(const ValidationReport& r) {
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "validate";
  j["n"] = r.n;
  j["m"] = r.m;
  j["p"] = r.p;
  j["sparsity"] = sparsity_json(r.sparsity);
  j["psd"] = {{"checked", r.psd_checked},
              {"min_eigenvalue", r.psd_checked ? json(r.psd_min_eigenvalue) : json(nullptr)},
              {"tolerance", r.psd_tolerance}};
  if (!r.notice.empty()) j["notice"] = r.notice;
  j["ok"] = r.ok;
  return j.dump(2) + "\n";
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream os;
  const SparsityReport& s = r.sparsity;
  os << "outcome units:            " << r.n << "\n"
     << "intervention units:       " << r.m << "\n"
     << "max outcome degree:       " << s.max_outcome_degree << "\n"
     << "max intervention degree:  " << s.max_intervention_degree << "\n"
     << "max connectivity (B):     " << s.max_connectivity << "\n"
     << "isolated interventions:   " << s.isolated_intervention_units << "\n"
     << "overlapping pairs:        " << s.overlapping_pairs << " (" << s.offdiagonal_overlapping_pairs
     << " off-diagonal)\n";
  if (r.psd_checked) {
    os << "PSD min eigenvalue:       " << std::setprecision(6) << r.psd_min_eigenvalue << " (p = " << r.p
       << ", tolerance " << r.psd_tolerance << ")\n";
  } else {
    os << "note: " << r.notice << "\n";
  }
  os << "status:                   " << (r.ok ? "ok" : "FAILED") << "\n";
  return os.str();
}

std::string to_json(const SimReport& r) {
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "simulate";
  j["config"] = config_json(r.config);
  j["tau"] = r.tau;
  j["tau0"] = r.tau0;
  j["threads_used"] = r.threads_used;
  json rows = json::array();
  for (const SimRow& row : r.rows) {
    rows.push_back({{"estimator", row.estimator},
                    {"bias", number(row.bias)},
                    {"se", number(row.se)},
                    {"se_defined", row.se_defined},
                    {"se_hat_mean", number(row.se_hat_mean)},
                    {"coverage", number(row.coverage)},
                    {"power", number(row.power)},
                    {"valid_draws", row.valid_draws},
                    {"degenerate_draws", row.degenerate_draws},
                    {"clamped_components", row.clamped_components},
                    {"se_mc_error", number(row.se_mc_error)},
                    {"se_hat_mc_error", number(row.se_hat_mc_error)}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string to_csv(const SimReport& r) {
  std::ostringstream os;
  os << "format_version,regime,estimator,tau,bias,se,se_hat_mean,coverage,power,valid_draws,degenerate_draws,"
        "clamped_components\n";
  for (const SimRow& row : r.rows) {
    os << kFormatVersion << ',' << to_string(r.config.regime) << ',' << row.estimator << ',' << csv_number(r.tau)
       << ',' << csv_number(row.bias) << ',' << csv_number(row.se) << ',' << csv_number(row.se_hat_mean) << ','
       << csv_number(row.coverage) << ',' << csv_number(row.power) << ',' << row.valid_draws << ','
       << row.degenerate_draws << ',' << row.clamped_components << '\n';
  }
  return os.str();
}

}  // namespace bipexp
