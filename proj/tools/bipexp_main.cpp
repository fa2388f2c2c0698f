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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bipexp/bipexp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

// Input and configuration problems are usage errors; everything else is a
// failure of the estimation or validation itself.
int exit_code_for(int status) {
  switch (status) {
    case BIPEXP_OK: return kExitOk;
    case BIPEXP_PARSE_ERROR:
    case BIPEXP_IO_ERROR:
    case BIPEXP_INVALID_CONFIG:
    case BIPEXP_INVALID_PROBABILITY:
    case BIPEXP_INVALID_ALPHA:
    case BIPEXP_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitFailure;
  }
}

int report_error(int status) {
  std::cerr << "error: " << bipexp_last_error() << "\n";
  return exit_code_for(status);
}

// Owns a string returned by the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { bipexp_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  return write_file(path, text) ? kExitOk : kExitUsage;
}

struct EstimateArgs {
  std::string graph, data, assignment, out;
  double p = 0.5;
  double alpha = 0.05;
  bool adjust = false;
  bool degree_covariate = false;
};

int cmd_estimate(const EstimateArgs& a) {
  bipexp_estimate_options opt;
  bipexp_estimate_options_init(&opt);
  opt.p = a.p;
  opt.alpha = a.alpha;
  opt.adjust = a.adjust ? 1 : 0;
  opt.degree_covariate = a.degree_covariate ? 1 : 0;
  LibString json;
  const int st = bipexp_estimate_files(a.graph.c_str(), a.data.c_str(), a.assignment.c_str(), &opt, &json.ptr);
  if (st != BIPEXP_OK) return report_error(st);
  return emit(a.out, json.str());
}

struct SimulateArgs {
  std::string config, out_json, out_csv;
  std::vector<std::string> sets;
  std::size_t threads = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  bipexp_sim_config* cfg = nullptr;
  int st = bipexp_sim_config_load(a.config.c_str(), &cfg);
  if (st != BIPEXP_OK) return report_error(st);
  struct Guard {
    bipexp_sim_config* c;
    ~Guard() { bipexp_sim_config_free(c); }
  } guard{cfg};

  for (const std::string& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      return kExitUsage;
    }
    st = bipexp_sim_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != BIPEXP_OK) return report_error(st);
  }
  st = bipexp_sim_config_validate(cfg);
  if (st != BIPEXP_OK) return report_error(st);

  LibString resolved;
  st = bipexp_sim_config_format(cfg, &resolved.ptr);
  if (st != BIPEXP_OK) return report_error(st);
  std::cerr << "# resolved configuration\n" << resolved.str();

  LibString json, csv;
  st = bipexp_simulate(cfg, a.threads, &json.ptr, &csv.ptr);
  if (st != BIPEXP_OK) return report_error(st);
  if (!a.out_json.empty() && !write_file(a.out_json, json.str())) return kExitUsage;
  if (!a.out_csv.empty() && !write_file(a.out_csv, csv.str())) return kExitUsage;
  std::cout << csv.str();
  return kExitOk;
}

struct ValidateArgs {
  std::string graph, out_json;
  double p = 0.5;
};

int cmd_validate(const ValidateArgs& a) {
  bipexp_graph* g = nullptr;
  int st = bipexp_graph_load_csv(a.graph.c_str(), &g);
  if (st != BIPEXP_OK) {
    std::cerr << "error: " << bipexp_last_error() << "\n";
    return st == BIPEXP_PARSE_ERROR || st == BIPEXP_IO_ERROR ? kExitUsage : kExitFailure;
  }
  LibString json, text;
  int ok = 0;
  st = bipexp_validate(g, a.p, &json.ptr, &text.ptr, &ok);
  bipexp_graph_free(g);
  if (st != BIPEXP_OK) return report_error(st);
  std::cout << text.str();
  if (!a.out_json.empty() && !write_file(a.out_json, json.str())) return kExitUsage;
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design-based estimation for bipartite experiments"};
  app.set_version_flag("--version", std::string(bipexp_version()));
  app.require_subcommand(1);

  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the total treatment effect from observed data");
  estimate->add_option("--graph", est.graph, "Edge CSV (intervention_id,outcome_id)")->required();
  estimate->add_option("--data", est.data, "Data CSV (outcome_id,y,x1,...,xd)")->required();
  estimate->add_option("--assignment", est.assignment, "Assignment CSV (intervention_id,z)")->required();
  estimate->add_option("--p", est.p, "Treatment probability")->required();
  estimate->add_option("--alpha", est.alpha, "Significance level");
  estimate->add_flag("--adjust", est.adjust, "Covariate-adjusted estimator");
  estimate->add_flag("--degree-covariate", est.degree_covariate, "Add the outcome degree as a covariate");
  estimate->add_option("-o,--out", est.out, "Report path (default stdout)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo study from a config file");
  simulate->add_option("config", sim.config, "Config file")->required();
  simulate->add_option("--set", sim.sets, "Override a config key (key=value); repeatable");
  simulate->add_option("--json", sim.out_json, "JSON report path");
  simulate->add_option("--csv", sim.out_csv, "CSV report path");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check graph sparsity and dependence-matrix PSD");
  validate->add_option("--graph", val.graph, "Edge CSV")->required();
  validate->add_option("--p", val.p, "Treatment probability");
  validate->add_option("--json", val.out_json, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*estimate) return cmd_estimate(est);
  if (*simulate) {
    sim.threads = threads;
    return cmd_simulate(sim);
  }
  return cmd_validate(val);
}
