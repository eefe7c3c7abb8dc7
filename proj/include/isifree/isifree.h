/*
 * Copyright 2026 The isifree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * isifree C API.
 *
 * Every function returns an isf_status. On failure the message is kept in a
 * thread-local buffer readable through isf_last_error() until the next call
 * on the same thread. Strings returned through char** out-parameters are
 * heap allocated and must be released with isf_string_free(). Handles are
 * opaque and released with their matching *_free function; a code handle
 * may be shared read-only across threads, encoders and decoders may not.
 */
#ifndef ISIFREE_ISIFREE_H_
#define ISIFREE_ISIFREE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ISIFREE_BUILD)
#define ISF_API __declspec(dllexport)
#else
#define ISF_API __declspec(dllimport)
#endif
#else
#define ISF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isf_status {
  ISF_OK = 0,
  ISF_ERR_INVALID_ARGUMENT = 1,
  ISF_ERR_CAPACITY_EXHAUSTED = 2,
  ISF_ERR_NOT_CONVERGED = 3,
  ISF_ERR_MALFORMED_CODE = 4,
  ISF_ERR_DESYNC = 5,
  ISF_ERR_IO = 6,
  ISF_ERR_PARSE = 7,
  ISF_ERR_INTERNAL = 8
} isf_status;

typedef enum isf_action_set {
  ISF_ACTIONS_FULL_DEPTH = 0,
  ISF_ACTIONS_PREFIX_FREE = 1
} isf_action_set;

typedef struct isf_code isf_code;
typedef struct isf_encoder isf_encoder;
typedef struct isf_decoder isf_decoder;

ISF_API const char* isf_version(void);
ISF_API const char* isf_status_name(isf_status status);
ISF_API const char* isf_last_error(void);
ISF_API void isf_string_free(char* s);

/* ---- capacity ---------------------------------------------------------- */

typedef struct isf_capacity_result {
  double lambda;
  double capacity_bits;
  int iterations;
  double residual;
} isf_capacity_result;

ISF_API isf_status isf_capacity(int k, int num_types, double tol, isf_capacity_result* out);

/* CSV "m,N(m),log2N/m" for m = 1..max_m, walks from the all-gap state.
 * N(m) is exact (decimal). */
ISF_API isf_status isf_path_counts_csv(int k, int num_types, int max_m, char** csv);

/* ---- synthesis --------------------------------------------------------- */

typedef struct isf_synthesis_options {
  int k;
  int num_types;
  int depth;
  double tol;
  isf_action_set actions;
} isf_synthesis_options;

typedef struct isf_synthesis_report {
  double rate;
  double bisection_root;
  double capacity_bound;
  double gap;
  int bisection_steps;
  int exact_search;
} isf_synthesis_report;

ISF_API isf_synthesis_options isf_synthesis_options_default(void);

/* code_out may be NULL when only the report is wanted. */
ISF_API isf_status isf_synthesize(const isf_synthesis_options* options,
                                  isf_synthesis_report* report, isf_code** code_out);

/* ---- codes ------------------------------------------------------------- */

typedef struct isf_code_info {
  int k;
  int num_types;
  int depth;
  size_t num_states;
  double metadata_rate;
} isf_code_info;

ISF_API isf_status isf_code_load(const char* path, isf_code** out);
ISF_API isf_status isf_code_parse(const char* json, isf_code** out);
ISF_API isf_status isf_code_save(const isf_code* code, const char* path);
ISF_API isf_status isf_code_to_json(const isf_code* code, char** json);
ISF_API isf_status isf_mcsk_code(isf_code** out);
ISF_API void isf_code_free(isf_code* code);

ISF_API isf_status isf_code_info_get(const isf_code* code, isf_code_info* info);
/* Newline-separated violations in *report (empty when valid). */
ISF_API isf_status isf_code_validate(const isf_code* code, size_t* n_violations, char** report);
ISF_API isf_status isf_code_analytic_rate(const isf_code* code, double* rate);

/* ---- encode / decode --------------------------------------------------- */

/* Whole-stream helpers using the container format
 * "n_bits=<int>\n<space separated symbols>\n". */
ISF_API isf_status isf_encode_stream(const isf_code* code, const char* bits, char** container);
ISF_API isf_status isf_decode_stream(const isf_code* code, const char* container, char** bits);

ISF_API isf_status isf_encoder_new(const isf_code* code, isf_encoder** out);
/* Appends the symbols emitted for `bits` (space separated) to *symbols. */
ISF_API isf_status isf_encoder_push_bits(isf_encoder* enc, const char* bits, char** symbols);
ISF_API isf_status isf_encoder_finish(isf_encoder* enc, char** symbols, size_t* padded_bits);
ISF_API void isf_encoder_free(isf_encoder* enc);

ISF_API isf_status isf_decoder_new(const isf_code* code, isf_decoder** out);
ISF_API isf_status isf_decoder_push_symbols(isf_decoder* dec, const char* symbols, char** bits);
ISF_API isf_status isf_decoder_buffer(const isf_decoder* dec, size_t* max_occupancy,
                                      size_t* limit);
ISF_API void isf_decoder_free(isf_decoder* dec);

/* ---- evaluation -------------------------------------------------------- */

typedef struct isf_rate_report {
  double analytic_rate;
  double monte_carlo_rate;
  double capacity;
  double gap;
  uint64_t n_bits_simulated;
  uint64_t symbols_emitted;
  uint64_t seed;
  const char* prng; /* static string */
} isf_rate_report;

ISF_API isf_status isf_monte_carlo(const isf_code* code, uint64_t n_bits, uint64_t seed,
                                   isf_rate_report* out);

ISF_API isf_status isf_table2_csv(char** csv);

/* Runs a sweep described by a JSON config. *csv receives the table,
 * *errors (may be NULL) one machine-readable line per failed cell. When the
 * config has an "out" path the table is also written there. */
ISF_API isf_status isf_sweep_csv(const char* config_json, char** csv, char** errors);

#ifdef __cplusplus
}
#endif

#endif /* ISIFREE_ISIFREE_H_ */
