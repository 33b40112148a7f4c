// Copyright 2026 The topinf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPINF_TOPINF_H
#define TOPINF_TOPINF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TOPINF_API __declspec(dllexport)
#else
#define TOPINF_API __attribute__((visibility("default")))
#endif

/* Status codes; they double as CLI exit codes. */
typedef enum topinf_status {
  TOPINF_OK = 0,
  TOPINF_INCONCLUSIVE = 1,
  TOPINF_PRECONDITION = 2,
  TOPINF_CONSISTENCY = 3,
  TOPINF_INTERNAL = 4
} topinf_status;

typedef struct topinf_model topinf_model;
typedef struct topinf_ball topinf_ball;
typedef struct topinf_complex topinf_complex;

TOPINF_API const char* topinf_version(void);

/* Message of the last failed call on this thread ("" if none). */
TOPINF_API const char* topinf_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
TOPINF_API void topinf_string_free(char* s);

/* Built-in family such as "z3", "free2", "surface2", "f2xz2". */
TOPINF_API topinf_status topinf_model_family(const char* name,
                                             topinf_model** out);
/* Presentation file ("gens: a b" / "rel: ..." lines). */
TOPINF_API topinf_status topinf_model_from_file(const char* path,
                                                int allow_heuristic,
                                                topinf_model** out);
TOPINF_API topinf_status topinf_model_describe(const topinf_model* model,
                                               char** out);
TOPINF_API void topinf_model_free(topinf_model* model);

/* cache_dir may be NULL. */
TOPINF_API topinf_status topinf_ball_build(const topinf_model* model,
                                           int radius, const char* cache_dir,
                                           topinf_ball** out);
TOPINF_API int topinf_ball_radius(const topinf_ball* ball);
TOPINF_API topinf_status topinf_ball_count(const topinf_ball* ball, int k,
                                           size_t* out);
/* Word distance between two words of the model, if at most the radius;
 * -1 otherwise. */
TOPINF_API topinf_status topinf_ball_distance(const topinf_ball* ball,
                                              const char* u, const char* v,
                                              int* out);
TOPINF_API void topinf_ball_free(topinf_ball* ball);

/* Materialized complex P_d with m colors over the ball. */
TOPINF_API topinf_status topinf_complex_build(const topinf_ball* ball, int d,
                                              int m, topinf_complex** out);
TOPINF_API topinf_status topinf_complex_counts(const topinf_complex* complex,
                                               size_t* vertices, size_t* edges,
                                               size_t* triangles);
/* Rank and torsion of H1 of the annulus inner < dist <= outer (outer < 0:
 * the whole ball), as JSON. */
TOPINF_API topinf_status topinf_complex_h1(const topinf_complex* complex,
                                           int inner, int outer, char** json);
TOPINF_API void topinf_complex_free(topinf_complex* complex);

/* Runs a job described by a JSON config (keys as in the CLI long options,
 * with underscores). report and csv may be NULL; csv is "" for commands
 * without a table. Returns the job status. */
TOPINF_API topinf_status topinf_run_job(const char* config_json, char** report,
                                        char** csv, char** text);

#ifdef __cplusplus
}
#endif

#endif /* TOPINF_TOPINF_H */
