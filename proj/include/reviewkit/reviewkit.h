// Copyright 2026 The reviewkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVIEWKIT_REVIEWKIT_H_
#define REVIEWKIT_REVIEWKIT_H_

#include <stddef.h>

#if defined(REVIEWKIT_BUILDING_LIBRARY)
#define RK_API __attribute__((visibility("default")))
#else
#define RK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_INVALID_ARGUMENT = 1,
  RK_ERR_PARSE = 2,
  RK_ERR_NOT_FOUND = 3,
  RK_ERR_IO = 4,
  RK_ERR_HTTP = 5,
  RK_ERR_AUTH = 6,
  RK_ERR_TIMEOUT = 7,
  RK_ERR_TRANSPORT = 8,
  RK_ERR_EMPTY_COMPLETION = 9,
  RK_ERR_STREAM = 10,
  RK_ERR_CONVERSION = 11,
  RK_ERR_COMMAND_NOT_FOUND = 12,
  RK_ERR_EMPTY_CONVERSION = 13,
  RK_ERR_UNPARSEABLE_VERDICT = 14,
  RK_ERR_RECOMMENDATION_MISSING = 15,
  RK_ERR_NOTHING_TO_EVALUATE = 16,
  RK_ERR_CONTEXT_TOO_LONG = 17,
  RK_ERR_INTERNAL = 18
} rk_status;

typedef enum rk_outcome { RK_OUTCOME_A = 0, RK_OUTCOME_B = 1, RK_OUTCOME_TIE = 2 } rk_outcome;

RK_API const char* rk_version(void);
// Stable machine-readable name, e.g. "empty_conversion_output".
RK_API const char* rk_status_name(rk_status status);
// Message of the last failed call on the calling thread; "" if none.
RK_API const char* rk_last_error(void);
// Frees strings returned through char** out-parameters.
RK_API void rk_free(char* s);

// ---- Application handle -----------------------------------------------------

typedef struct rk_app rk_app;

// `config_path` may be NULL for defaults.
RK_API rk_status rk_app_create(const char* config_path, rk_app** out);
// Overrides one dotted config key, e.g. "inference.endpoint_url".
RK_API rk_status rk_app_set(rk_app* app, const char* key, const char* value);
RK_API rk_status rk_app_config_json(const rk_app* app, char** out_json);
RK_API void rk_app_destroy(rk_app* app);

// JSON array of {"venue_id","template"} for built-in and configured templates.
RK_API rk_status rk_app_templates(const rk_app* app, char** out_json);

// ---- Pure helpers -----------------------------------------------------------

// Parses and re-serializes a template file (canonical form).
RK_API rk_status rk_template_canonical(const char* template_text, char** out_text);
RK_API rk_status rk_template_render_fields(const char* template_text, char** out_markdown);
// {"field_contents":{...},"missing_fields":[...],"recommendation_raw":n|null}
RK_API rk_status rk_review_parse(const char* template_text, const char* review_markdown,
                                 char** out_json);
RK_API rk_status rk_verdict_parse(const char* judge_text, rk_outcome* out);
RK_API rk_status rk_normalize_score(double raw, int scale_min, int scale_max, double* out);

// ---- Pipeline operations ----------------------------------------------------
// Each writes its machine-readable results to a new run directory under the
// configured results_dir and returns a JSON summary including "run_dir".

typedef void (*rk_delta_fn)(const char* text, size_t len, void* user_data);

RK_API rk_status rk_convert(rk_app* app, const char* pdf_path, char** out_json);
// `template_id` may be NULL for "iclr-default". `on_delta` may be NULL for a
// blocking request.
RK_API rk_status rk_generate(rk_app* app, const char* paper_markdown, const char* template_id,
                             rk_delta_fn on_delta, void* user_data, char** out_json);
// `output_path` may be NULL to write into the run directory.
RK_API rk_status rk_curate(rk_app* app, const char* raw_jsonl_path, const char* output_path,
                           char** out_json);
RK_API rk_status rk_evaluate(rk_app* app, const char* corpus_path, const char* model_id,
                             char** out_json);
RK_API rk_status rk_arena(rk_app* app, const char* corpus_path, const char* model_a,
                          const char* model_b, int both_orders, char** out_json);

// ---- HTTP service -----------------------------------------------------------

typedef struct rk_server rk_server;

// `listen_address` ("host:port") may be NULL to use the configured one.
RK_API rk_status rk_server_start(const rk_app* app, const char* listen_address, rk_server** out);
RK_API int rk_server_port(const rk_server* server);
// Blocks until the server stops.
RK_API void rk_server_wait(rk_server* server);
// Thread-safe; may be called while another thread waits.
RK_API void rk_server_stop(rk_server* server);
RK_API void rk_server_destroy(rk_server* server);

#ifdef __cplusplus
}
#endif

#endif  // REVIEWKIT_REVIEWKIT_H_
