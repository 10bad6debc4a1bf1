/*
 * Copyright 2026 ccdel authors
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

/*
 * C interface to the cache-aided broadcast delivery library.
 *
 * Conventions:
 *  - Every function returns a ccdel_status; CCDEL_OK is 0. On failure,
 *    ccdel_last_error() holds a message for the calling thread and output
 *    parameters are left untouched.
 *  - Objects created by *_create/*_build/*_run calls are released with the
 *    matching *_destroy. Strings returned through char** are released with
 *    ccdel_string_free.
 *  - Users are indexed 1..K by ascending channel gain; user 1 is the
 *    weakest receiver. Cache sizes and grid entries are exact rationals
 *    written as "2", "3/2" or "1.5".
 */

#ifndef CCDEL_H
#define CCDEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef CCDEL_API
#if defined(CCDEL_BUILDING_SHARED) && defined(__GNUC__)
#define CCDEL_API __attribute__((visibility("default")))
#else
#define CCDEL_API
#endif
#endif

typedef enum ccdel_status {
  CCDEL_OK = 0,
  CCDEL_E_INVALID_ARGUMENT = 1,
  CCDEL_E_NON_INTEGER_T = 2,   /* deterministic placement needs integer K*M/N */
  CCDEL_E_RANGE = 3,
  CCDEL_E_DIVISIBILITY = 4,    /* file_bits not divisible by the segment count */
  CCDEL_E_INFEASIBLE_RATES = 5,
  CCDEL_E_BAD_BRACKET = 6,
  CCDEL_E_MAX_ITERATIONS = 7,
  CCDEL_E_ZERO_GAIN = 8,
  CCDEL_E_DECODE = 9,
  CCDEL_E_SOLVER = 10,
  CCDEL_E_VIOLATION = 11,
  CCDEL_E_IO = 12,
  CCDEL_E_UNKNOWN = 13
} ccdel_status;

typedef struct ccdel_params ccdel_params;     /* users, files, cache size, mode */
typedef struct ccdel_channel ccdel_channel;   /* sorted channel gains */
typedef struct ccdel_schedule ccdel_schedule; /* delivery schedule */
typedef struct ccdel_sweep ccdel_sweep;       /* Monte Carlo sweep results */

/* Message describing the last failure on the calling thread. Never NULL. */
CCDEL_API const char* ccdel_last_error(void);

/* Frees a string returned through a char** output parameter. */
CCDEL_API void ccdel_string_free(char* s);

/* mode is "centralized" (deterministic placement) or "decentralized"
 * (randomized placement). cache_size is a rational in files, 0 <= M <= N. */
CCDEL_API ccdel_status ccdel_params_create(uint32_t users, uint32_t files,
                                           const char* cache_size, const char* mode,
                                           ccdel_params** out);
CCDEL_API void ccdel_params_destroy(ccdel_params* params);

/* Wraps explicit squared channel gains; they are sorted ascending
 * internally and the original order is kept for reporting. */
CCDEL_API ccdel_status ccdel_channel_create(const double* gains, size_t count,
                                            ccdel_channel** out);

/* Draws `users` unit-mean Rayleigh-faded squared gains from the seed. */
CCDEL_API ccdel_status ccdel_channel_sample(uint32_t users, uint64_t seed, ccdel_channel** out);

/* Copies the sorted gains into out (up to capacity entries); *written gets
 * the actual gain count regardless of how many were copied. */
CCDEL_API ccdel_status ccdel_channel_gains(const ccdel_channel* channel, double* out,
                                           size_t capacity, size_t* written);
CCDEL_API void ccdel_channel_destroy(ccdel_channel* channel);

/* scheme is "orthogonal" (groups take turns at the weakest member's
 * capacity) or "concurrent" (superposed groups sharing one window).
 * with_sets != 0 also materializes the multicast set listings when the
 * total set count is at most 100000. */
CCDEL_API ccdel_status ccdel_schedule_build(const ccdel_params* params,
                                            const ccdel_channel* channel, const char* scheme,
                                            int with_sets, ccdel_schedule** out);

/* Completion time in file transmission units. */
CCDEL_API ccdel_status ccdel_schedule_total_time(const ccdel_schedule* schedule, double* out);
CCDEL_API ccdel_status ccdel_schedule_to_json(const ccdel_schedule* schedule, char** out);
CCDEL_API void ccdel_schedule_destroy(ccdel_schedule* schedule);

/* Bit-level replay: places caches from the seed, delivers every multicast
 * message, and checks each user reconstructs its request exactly.
 * requests may be NULL for the distinct-demand worst case, otherwise it
 * holds request_count == users file indices (1-based). *decode_ok gets
 * 1/0; a failed decode still returns CCDEL_OK, with the failure detail in
 * the report. report_json may be NULL when only the flag is wanted. */
CCDEL_API ccdel_status ccdel_trace_run(const ccdel_params* params, const ccdel_channel* channel,
                                       const char* scheme, uint64_t file_bits, uint64_t seed,
                                       const uint32_t* requests, size_t request_count,
                                       int* decode_ok, char** report_json);

/* Monte Carlo sweep over cache sizes at the given user/file counts.
 * m_grid is a comma-separated list of rationals ("0,2,4,6,8"), or NULL for
 * the default grid {0, N/4, N/2, 3N/4, N}. Deterministic for a fixed seed. */
CCDEL_API ccdel_status ccdel_sweep_run(uint32_t users, uint32_t files, const char* m_grid,
                                       uint32_t trials, uint64_t seed, ccdel_sweep** out);
CCDEL_API ccdel_status ccdel_sweep_csv(const ccdel_sweep* sweep, char** out);
CCDEL_API void ccdel_sweep_destroy(ccdel_sweep* sweep);

/* Bulk property verification across Rayleigh trials: concurrent completion
 * never exceeds orthogonal, and the randomized/deterministic orthogonal
 * time ratio stays within [1, gap_bound]. k_list may be NULL/0 for the
 * default {2, 4, 8}. *ok gets 1 when every check passed; property failures
 * are data in the report, not an error status. */
CCDEL_API ccdel_status ccdel_verify_run(const uint32_t* k_list, size_t k_count, uint32_t trials,
                                        uint64_t seed, double gap_bound, int* ok,
                                        char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* CCDEL_H */
