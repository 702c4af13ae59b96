/*
 * Copyright 2026 The privrel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of the privrel differentially private query-release engine.
 *
 * Every function returns PRIVREL_OK (0) on success or an error code;
 * privrel_strerror() names a code and privrel_last_error() returns a
 * thread-local human-readable message for the most recent failure on the
 * calling thread. Objects are opaque handles freed by their *_free
 * function. Strings returned through char** out-parameters are owned by
 * the caller and released with privrel_string_free().
 *
 * Configs are JSON text; the schema is documented in the project README.
 */

#ifndef PRIVREL_H
#define PRIVREL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PRIVREL_OK 0
#define PRIVREL_ERR_INVALID_ARGUMENT 1
#define PRIVREL_ERR_DIMENSION_MISMATCH 2
#define PRIVREL_ERR_PARSE 3
#define PRIVREL_ERR_IO 4
#define PRIVREL_ERR_DB_TOO_SMALL 5
#define PRIVREL_ERR_PARAMETER_OVERFLOW 6
#define PRIVREL_ERR_BUDGET_EXCEEDED 7
#define PRIVREL_ERR_CAPABILITY 8
#define PRIVREL_ERR_FEATURE_OVERFLOW 9
#define PRIVREL_ERR_TRAINING 10
#define PRIVREL_ERR_LEARNER_FAILURE 11
#define PRIVREL_ERR_INTERNAL 12

typedef struct privrel_database privrel_database;
typedef struct privrel_synopsis privrel_synopsis;

const char* privrel_version(void);
const char* privrel_strerror(int code);
const char* privrel_last_error(void);
void privrel_string_free(char* s);

/* Databases: CSV rows of comma-separated 0/1 values, one item per row. */
int privrel_database_load_csv(const char* path, int has_header,
                              privrel_database** out_db);
/* spec_json: {"dimension": d, "seed": s, "type": "bernoulli"|"clustered",
 * ...} with the same database fields as the experiment config. */
int privrel_database_generate(const char* spec_json, privrel_database** out_db);
int privrel_database_info(const privrel_database* db, uint64_t* out_size,
                          uint32_t* out_dimension);
void privrel_database_free(privrel_database* db);

/* Synopses: the released object, serialized as JSON. */
int privrel_synopsis_load(const char* path, privrel_synopsis** out_synopsis);
/* query_bits: string of '0'/'1' of the synopsis' dimension. */
int privrel_synopsis_evaluate(const privrel_synopsis* synopsis,
                              const char* query_bits, double* out_value);
void privrel_synopsis_free(privrel_synopsis* synopsis);

/* Derived parameters for a config, as a JSON string. */
int privrel_params(const char* config_json, char** out_params_json);

/* Run the release pipeline for a config, write report/synopsis/transcript/
 * error-table artifacts under output_dir (NULL: the config's output dir,
 * both overridden by PRIVREL_OUT_DIR), and report whether the accuracy
 * target was met. out_pass and out_report_json may be NULL. */
int privrel_release(const char* config_json, const char* output_dir,
                    int* out_pass, char** out_report_json);

/* Re-score a serialized synopsis against a database: the config supplies
 * predicate, dimension, accuracy targets and the query distribution; pass
 * database_csv to override the config's database source. */
int privrel_eval(const char* config_json, const char* synopsis_path,
                 const char* database_csv, int database_has_header,
                 int* out_pass, char** out_report_json);

/* Property-verifier suites: "agreement", "damping", "ptf", "subsample" or
 * "all". out_pass is 1 iff every selected suite passed. */
int privrel_verify(const char* suite, uint64_t seed, int* out_pass,
                   char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* PRIVREL_H */
