/* Copyright 2026-present The rendezvous Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of librendezvous.
 *
 * Every function returns an rdv_status. On failure a description is
 * available from rdv_last_error() until the next call on the same thread.
 * Strings returned through char** are owned by the caller and released with
 * rdv_string_free(). Handles are released with their *_free function;
 * passing NULL to a free function is a no-op.
 */

#ifndef RENDEZVOUS_RENDEZVOUS_H_
#define RENDEZVOUS_RENDEZVOUS_H_

#if defined(_WIN32)
#define RDV_API __declspec(dllexport)
#else
#define RDV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdv_status {
  RDV_OK = 0,
  /* Malformed or invalid scenario, spec or argument. */
  RDV_ERR_INPUT = 1,
  /* An agent program violated its contract during a run. */
  RDV_ERR_PROTOCOL = 2,
  /* A file could not be read or written. */
  RDV_ERR_IO = 3,
  RDV_ERR_INTERNAL = 4,
  RDV_ERR_NULL = 5
} rdv_status;

typedef struct rdv_scenario rdv_scenario;
typedef struct rdv_run rdv_run;

RDV_API const char* rdv_version(void);
RDV_API const char* rdv_last_error(void);
RDV_API void rdv_string_free(char* s);

/* Scenarios. `source_name` labels parse diagnostics and may be NULL. */
RDV_API rdv_status rdv_scenario_parse(const char* json_text, const char* source_name,
                                      rdv_scenario** out);
RDV_API rdv_status rdv_scenario_load(const char* path, rdv_scenario** out);
RDV_API rdv_status rdv_scenario_to_json(const rdv_scenario* s, char** out);
RDV_API rdv_status rdv_scenario_set_strict_paper_loop(rdv_scenario* s, int strict);
RDV_API void rdv_scenario_free(rdv_scenario* s);

/* Single runs. */
RDV_API rdv_status rdv_run_scenario(const rdv_scenario* s, rdv_run** out);
RDV_API rdv_status rdv_run_met(const rdv_run* run, int* met);
/* 1 when the run violates the time bound or contract of its model. */
RDV_API rdv_status rdv_run_violation(const rdv_run* run, int* violation);
RDV_API rdv_status rdv_run_report_json(const rdv_run* run, char** out);
RDV_API rdv_status rdv_run_write_trace(const rdv_run* run, const char* path);
/* `step` is a rational string; NULL selects (x+y)/1024. */
RDV_API rdv_status rdv_run_write_csv(const rdv_run* run, const char* path, const char* step);
RDV_API void rdv_run_free(rdv_run* run);

/* Sweeps. `verdict` is 1 when every bound holds (sweep) or executor and
 * oracle agree everywhere (verify), else 0. `out_dir` may be NULL. A
 * non-zero `strict` forces the published loop guard for every scenario.
 * `dt` may be NULL to use the spec's value or 2^-10. `source_name` labels
 * parse diagnostics and may be NULL. */
RDV_API rdv_status rdv_sweep(const char* spec_json, const char* source_name, const char* out_dir,
                             int strict, char** report, int* verdict);
RDV_API rdv_status rdv_verify(const char* spec_json, const char* source_name, const char* dt,
                              int strict, char** report, int* verdict);

#ifdef __cplusplus
}
#endif

#endif /* RENDEZVOUS_RENDEZVOUS_H_ */
