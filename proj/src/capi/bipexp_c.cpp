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

#include "bipexp/bipexp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "../csv.hpp"
#include "bipexp/config.hpp"
#include "bipexp/error.hpp"
#include "bipexp/graph.hpp"
#include "bipexp/io.hpp"
#include "bipexp/report.hpp"
#include "bipexp/sim.hpp"

struct bipexp_graph {
  bipexp::BipartiteGraph graph;
};

struct bipexp_sim_config {
  bipexp::DGPConfig config;
};

namespace {

thread_local std::string last_error;

int ok() {
  last_error.clear();
  return BIPEXP_OK;
}

int set_error(int status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    return ok();
  } catch (const bipexp::Error& e) {
    return set_error(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(BIPEXP_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(BIPEXP_INTERNAL_ERROR, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* ptr, const char* name) {
  if (!ptr) bipexp::fail(bipexp::ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
}

bipexp::EstimateOptions to_options(const bipexp_estimate_options* opt) {
  bipexp::EstimateOptions o;
  if (opt) {
    o.p = opt->p;
    o.alpha = opt->alpha;
    o.adjust = opt->adjust != 0;
    o.degree_covariate = opt->degree_covariate != 0;
  }
  return o;
}

}  // namespace

extern "C" {

const char* bipexp_version(void) { return "1.0.0"; }

const char* bipexp_status_name(int status) {
  if (status == BIPEXP_INTERNAL_ERROR) return "InternalError";
  if (status < 0 || status > BIPEXP_INVALID_ARGUMENT) return "Unknown";
  return bipexp::error_name(static_cast<bipexp::ErrorCode>(status)).data();
}

const char* bipexp_last_error(void) { return last_error.c_str(); }

void bipexp_string_free(char* s) { std::free(s); }

int bipexp_graph_load_csv(const char* path, bipexp_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    const bipexp::EdgeList list = bipexp::read_edge_csv(path);
    *out = new bipexp_graph{bipexp::graph_from_edge_list(list)};
  });
}

int bipexp_graph_from_edges(size_t m, size_t n, const uint32_t* intervention, const uint32_t* outcome,
                            size_t num_edges, bipexp_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (num_edges > 0) {
      require(intervention, "intervention");
      require(outcome, "outcome");
    }
    std::vector<bipexp::Edge> edges(num_edges);
    for (size_t e = 0; e < num_edges; ++e) edges[e] = {intervention[e], outcome[e]};
    *out = new bipexp_graph{bipexp::BipartiteGraph::build(m, n, edges)};
  });
}

int bipexp_graph_dims(const bipexp_graph* g, size_t* m, size_t* n) {
  return guarded([&] {
    require(g, "graph");
    if (m) *m = g->graph.m();
    if (n) *n = g->graph.n();
  });
}

void bipexp_graph_free(bipexp_graph* g) { delete g; }

int bipexp_validate(const bipexp_graph* g, double p, char** json_out, char** text_out, int* ok_out) {
  return guarded([&] {
    require(g, "graph");
    const bipexp::ValidationReport r = bipexp::run_validation(g->graph, p);
    if (ok_out) *ok_out = r.ok ? 1 : 0;
    if (json_out) *json_out = copy_string(bipexp::to_json(r));
    if (text_out) *text_out = copy_string(bipexp::to_text(r));
  });
}

void bipexp_estimate_options_init(bipexp_estimate_options* opt) {
  if (!opt) return;
  opt->p = 0.5;
  opt->alpha = 0.05;
  opt->adjust = 0;
  opt->degree_covariate = 0;
}

int bipexp_estimate(const bipexp_graph* g, const double* y, const double* x, size_t n, size_t d, const uint8_t* z,
                    size_t m, const bipexp_estimate_options* opt, char** json_out) {
  return guarded([&] {
    require(g, "graph");
    require(y, "y");
    require(z, "z");
    require(json_out, "json_out");
    if (d > 0) require(x, "x");
    bipexp::ObservedData data;
    data.y = Eigen::Map<const Eigen::VectorXd>(y, static_cast<Eigen::Index>(n));
    data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < d; ++j) data.x(i, j) = x[i * d + j];
    }
    for (size_t j = 0; j < d; ++j) data.covariate_names.push_back("x" + std::to_string(j + 1));
    const std::vector<uint8_t> zv(z, z + m);
    *json_out = copy_string(bipexp::to_json(bipexp::run_estimate(g->graph, data, zv, to_options(opt))));
  });
}

int bipexp_estimate_files(const char* graph_csv, const char* data_csv, const char* assignment_csv,
                          const bipexp_estimate_options* opt, char** json_out) {
  return guarded([&] {
    require(graph_csv, "graph_csv");
    require(data_csv, "data_csv");
    require(assignment_csv, "assignment_csv");
    require(json_out, "json_out");
    const std::string graph_text = bipexp::csv::read_file(graph_csv);
    const std::string data_text = bipexp::csv::read_file(data_csv);
    const std::string z_text = bipexp::csv::read_file(assignment_csv);
    const bipexp::BipartiteGraph g =
        bipexp::graph_from_edge_list(bipexp::parse_edge_csv(graph_text, graph_csv));
    const bipexp::ObservedData data = bipexp::parse_data_csv(data_text, data_csv);
    const std::vector<uint8_t> z = bipexp::parse_assignment_csv(z_text, assignment_csv);
    bipexp::EstimateReport r = bipexp::run_estimate(g, data, z, to_options(opt));
    r.digests["graph"] = bipexp::sha256_hex(graph_text);
    r.digests["data"] = bipexp::sha256_hex(data_text);
    r.digests["assignment"] = bipexp::sha256_hex(z_text);
    *json_out = copy_string(bipexp::to_json(r));
  });
}

int bipexp_sim_config_default(bipexp_sim_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new bipexp_sim_config{};
  });
}

int bipexp_sim_config_load(const char* path, bipexp_sim_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new bipexp_sim_config{bipexp::read_config(path)};
  });
}

int bipexp_sim_config_set(bipexp_sim_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    bipexp::set_config_value(cfg->config, key, value);
  });
}

int bipexp_sim_config_validate(const bipexp_sim_config* cfg) {
  return guarded([&] {
    require(cfg, "config");
    cfg->config.validate();
  });
}

int bipexp_sim_config_format(const bipexp_sim_config* cfg, char** text_out) {
  return guarded([&] {
    require(cfg, "config");
    require(text_out, "text_out");
    *text_out = copy_string(bipexp::format_config(cfg->config));
  });
}

void bipexp_sim_config_free(bipexp_sim_config* cfg) { delete cfg; }

int bipexp_simulate(const bipexp_sim_config* cfg, size_t threads, char** json_out, char** csv_out) {
  return guarded([&] {
    require(cfg, "config");
    const bipexp::SimReport r = bipexp::run(cfg->config, threads);
    if (json_out) *json_out = copy_string(bipexp::to_json(r));
    if (csv_out) *csv_out = copy_string(bipexp::to_csv(r));
  });
}

}  // extern "C"
