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

#ifndef BIPEXP_BIPEXP_H_
#define BIPEXP_BIPEXP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(BIPEXP_BUILDING_LIBRARY)
#define BIPEXP_API __attribute__((visibility("default")))
#else
#define BIPEXP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values match bipexp::ErrorCode. */
typedef enum {
  BIPEXP_OK = 0,
  BIPEXP_INDEX_OUT_OF_RANGE = 1,
  BIPEXP_DUPLICATE_EDGE = 2,
  BIPEXP_ISOLATED_OUTCOME_UNIT = 3,
  BIPEXP_INVALID_DEGREE_BOUND = 4,
  BIPEXP_EMPTY_CLUSTER = 5,
  BIPEXP_ALL_UNITS_ISOLATED = 6,
  BIPEXP_INVALID_PROBABILITY = 7,
  BIPEXP_DIMENSION_MISMATCH = 8,
  BIPEXP_SIZE_GUARD_EXCEEDED = 9,
  BIPEXP_NO_TREATED_EXPOSURE = 10,
  BIPEXP_NO_CONTROL_EXPOSURE = 11,
  BIPEXP_INVALID_ALPHA = 12,
  BIPEXP_ENUMERATION_GUARD_EXCEEDED = 13,
  BIPEXP_INVALID_REPS = 14,
  BIPEXP_DEGENERATE_VARIANCE = 15,
  BIPEXP_ALL_DRAWS_DEGENERATE = 16,
  BIPEXP_PARSE_ERROR = 17,
  BIPEXP_IO_ERROR = 18,
  BIPEXP_INVALID_CONFIG = 19,
  BIPEXP_INVALID_ARGUMENT = 20,
  BIPEXP_INTERNAL_ERROR = 99
} bipexp_status;

typedef struct bipexp_graph bipexp_graph;
typedef struct bipexp_sim_config bipexp_sim_config;

typedef struct {
  double p;
  double alpha;
  int adjust;
  int degree_covariate;
} bipexp_estimate_options;

BIPEXP_API const char* bipexp_version(void);
BIPEXP_API const char* bipexp_status_name(int status);
/* Message of the last failed call on this thread; "" if none. */
BIPEXP_API const char* bipexp_last_error(void);
/* Releases strings returned through char** out-parameters. */
BIPEXP_API void bipexp_string_free(char* s);

/* Graphs. Edge-list ids are 0-based here; CSV files are 1-based. */
BIPEXP_API int bipexp_graph_load_csv(const char* path, bipexp_graph** out);
BIPEXP_API int bipexp_graph_from_edges(size_t m, size_t n, const uint32_t* intervention, const uint32_t* outcome,
                                       size_t num_edges, bipexp_graph** out);
BIPEXP_API int bipexp_graph_dims(const bipexp_graph* g, size_t* m, size_t* n);
BIPEXP_API void bipexp_graph_free(bipexp_graph* g);

/* Sparsity report and PSD check. *ok is 1 iff the structural checks pass.
   text_out may be NULL. */
BIPEXP_API int bipexp_validate(const bipexp_graph* g, double p, char** json_out, char** text_out, int* ok);

BIPEXP_API void bipexp_estimate_options_init(bipexp_estimate_options* opt);
/* y has n entries, x is row-major n x d (may be NULL when d = 0), z has m. */
BIPEXP_API int bipexp_estimate(const bipexp_graph* g, const double* y, const double* x, size_t n, size_t d,
                               const uint8_t* z, size_t m, const bipexp_estimate_options* opt, char** json_out);
/* Reads the three CSV files and records their SHA-256 digests in the report. */
BIPEXP_API int bipexp_estimate_files(const char* graph_csv, const char* data_csv, const char* assignment_csv,
                                     const bipexp_estimate_options* opt, char** json_out);

/* Simulation configs. */
BIPEXP_API int bipexp_sim_config_default(bipexp_sim_config** out);
BIPEXP_API int bipexp_sim_config_load(const char* path, bipexp_sim_config** out);
BIPEXP_API int bipexp_sim_config_set(bipexp_sim_config* cfg, const char* key, const char* value);
/* Validates the config as a whole. */
BIPEXP_API int bipexp_sim_config_validate(const bipexp_sim_config* cfg);
BIPEXP_API int bipexp_sim_config_format(const bipexp_sim_config* cfg, char** text_out);
BIPEXP_API void bipexp_sim_config_free(bipexp_sim_config* cfg);

/* threads = 0 uses all cores. Either output pointer may be NULL. */
BIPEXP_API int bipexp_simulate(const bipexp_sim_config* cfg, size_t threads, char** json_out, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif  /* BIPEXP_BIPEXP_H_ */
