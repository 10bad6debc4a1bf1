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

#include "ccdel.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core.hpp"
#include "delivery.hpp"
#include "experiments.hpp"
#include "placement.hpp"

using namespace ccdel;

struct ccdel_params {
  SystemParams params;
  PlacementMode mode;
};

struct ccdel_channel {
  ChannelState state;
};

struct ccdel_schedule {
  Schedule schedule;
};

struct ccdel_sweep {
  SweepResult result;
};

namespace {

thread_local std::string g_last_error;

ccdel_status status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return CCDEL_E_INVALID_ARGUMENT;
    case Errc::non_integer_t: return CCDEL_E_NON_INTEGER_T;
    case Errc::range: return CCDEL_E_RANGE;
    case Errc::divisibility: return CCDEL_E_DIVISIBILITY;
    case Errc::infeasible_rates: return CCDEL_E_INFEASIBLE_RATES;
    case Errc::bad_bracket: return CCDEL_E_BAD_BRACKET;
    case Errc::max_iterations: return CCDEL_E_MAX_ITERATIONS;
    case Errc::zero_gain: return CCDEL_E_ZERO_GAIN;
    case Errc::decode_failure: return CCDEL_E_DECODE;
    case Errc::solver_failure: return CCDEL_E_SOLVER;
    case Errc::violation: return CCDEL_E_VIOLATION;
    case Errc::io: return CCDEL_E_IO;
  }
  return CCDEL_E_UNKNOWN;
}

/// Runs fn, translating exceptions into status codes + the thread-local
/// error message.
template <typename Fn>
ccdel_status guarded(Fn&& fn) {
  try {
    fn();
    return CCDEL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CCDEL_E_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CCDEL_E_UNKNOWN;
  }
}

ccdel_status require(bool cond, const char* message) {
  if (cond) return CCDEL_OK;
  g_last_error = message;
  return CCDEL_E_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<Rational> parse_grid(const char* m_grid) {
  std::vector<Rational> grid;
  if (m_grid == nullptr) return grid;
  std::string text(m_grid);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    grid.push_back(parse_rational(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (grid.empty()) throw Error(Errc::invalid_argument, "empty cache size grid");
  return grid;
}

}  // namespace

extern "C" {

const char* ccdel_last_error(void) { return g_last_error.c_str(); }

void ccdel_string_free(char* s) { delete[] s; }

ccdel_status ccdel_params_create(uint32_t users, uint32_t files, const char* cache_size,
                                 const char* mode, ccdel_params** out) {
  if (auto st = require(cache_size && mode && out, "cache_size, mode and out must be non-NULL"))
    return st;
  return guarded([&] {
    PlacementMode m = parse_mode(mode);
    SystemParams p = validate_params(SystemParams::create(users, files, parse_rational(cache_size)), m);
    *out = new ccdel_params{p, m};
  });
}

void ccdel_params_destroy(ccdel_params* params) { delete params; }

ccdel_status ccdel_channel_create(const double* gains, size_t count, ccdel_channel** out) {
  if (auto st = require(gains && out && count > 0, "gains and out must be non-NULL, count > 0"))
    return st;
  return guarded([&] {
    *out = new ccdel_channel{ChannelState(std::vector<double>(gains, gains + count))};
  });
}

ccdel_status ccdel_channel_sample(uint32_t users, uint64_t seed, ccdel_channel** out) {
  if (auto st = require(out != nullptr, "out must be non-NULL")) return st;
  return guarded([&] { *out = new ccdel_channel{sample_channel(users, seed)}; });
}

ccdel_status ccdel_channel_gains(const ccdel_channel* channel, double* out, size_t capacity,
                                 size_t* written) {
  if (auto st = require(channel && written, "channel and written must be non-NULL")) return st;
  const auto& gains = channel->state.gains();
  *written = gains.size();
  if (out != nullptr) {
    size_t n = capacity < gains.size() ? capacity : gains.size();
    for (size_t i = 0; i < n; ++i) out[i] = gains[i];
  }
  return CCDEL_OK;
}

void ccdel_channel_destroy(ccdel_channel* channel) { delete channel; }

ccdel_status ccdel_schedule_build(const ccdel_params* params, const ccdel_channel* channel,
                                  const char* scheme, int with_sets, ccdel_schedule** out) {
  if (auto st = require(params && channel && scheme && out,
                        "params, channel, scheme and out must be non-NULL"))
    return st;
  return guarded([&] {
    Schedule s = build_schedule(params->params, params->mode, parse_scheme(scheme),
                                channel->state, with_sets != 0);
    *out = new ccdel_schedule{std::move(s)};
  });
}

ccdel_status ccdel_schedule_total_time(const ccdel_schedule* schedule, double* out) {
  if (auto st = require(schedule && out, "schedule and out must be non-NULL")) return st;
  *out = schedule->schedule.total_time;
  return CCDEL_OK;
}

ccdel_status ccdel_schedule_to_json(const ccdel_schedule* schedule, char** out) {
  if (auto st = require(schedule && out, "schedule and out must be non-NULL")) return st;
  return guarded([&] { *out = copy_string(schedule_to_json(schedule->schedule)); });
}

void ccdel_schedule_destroy(ccdel_schedule* schedule) { delete schedule; }

ccdel_status ccdel_trace_run(const ccdel_params* params, const ccdel_channel* channel,
                             const char* scheme, uint64_t file_bits, uint64_t seed,
                             const uint32_t* requests, size_t request_count, int* decode_ok,
                             char** report_json) {
  if (auto st = require(params && channel && scheme && decode_ok,
                        "params, channel, scheme and decode_ok must be non-NULL"))
    return st;
  if (auto st = require(requests == nullptr || request_count == params->params.users,
                        "request_count must equal the user count"))
    return st;
  return guarded([&] {
    PlacementState placement = params->mode == PlacementMode::centralized
                                   ? centralized_place(params->params, file_bits, seed)
                                   : decentralized_place(params->params, file_bits, seed);
    RequestVector req =
        requests == nullptr
            ? RequestVector::distinct(params->params)
            : RequestVector::from(params->params,
                                  std::vector<std::uint32_t>(requests, requests + request_count));
    TraceResult trace = simulate_decode(placement, req);
    Schedule schedule = build_schedule(params->params, params->mode, parse_scheme(scheme),
                                       channel->state, false);
    *decode_ok = trace.ok ? 1 : 0;
    if (report_json != nullptr)
      *report_json = copy_string(trace_to_json(trace, placement, req, schedule));
  });
}

ccdel_status ccdel_sweep_run(uint32_t users, uint32_t files, const char* m_grid, uint32_t trials,
                             uint64_t seed, ccdel_sweep** out) {
  if (auto st = require(out != nullptr, "out must be non-NULL")) return st;
  return guarded([&] {
    SweepConfig cfg;
    cfg.users = users;
    cfg.files = files;
    cfg.m_grid = parse_grid(m_grid);
    cfg.trials = trials;
    cfg.base_seed = seed;
    *out = new ccdel_sweep{run_sweep(cfg)};
  });
}

ccdel_status ccdel_sweep_csv(const ccdel_sweep* sweep, char** out) {
  if (auto st = require(sweep && out, "sweep and out must be non-NULL")) return st;
  return guarded([&] { *out = copy_string(sweep_csv(sweep->result)); });
}

void ccdel_sweep_destroy(ccdel_sweep* sweep) { delete sweep; }

ccdel_status ccdel_verify_run(const uint32_t* k_list, size_t k_count, uint32_t trials,
                              uint64_t seed, double gap_bound, int* ok, char** report_json) {
  if (auto st = require(ok != nullptr, "ok must be non-NULL")) return st;
  if (auto st = require(k_list != nullptr || k_count == 0, "k_count > 0 needs a k_list")) return st;
  return guarded([&] {
    VerifyConfig cfg;
    if (k_count > 0) cfg.k_list.assign(k_list, k_list + k_count);
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.gap_bound = gap_bound;
    VerifyReport report = verify_theorems(cfg);
    *ok = report.ok() ? 1 : 0;
    if (report_json != nullptr) *report_json = copy_string(verify_to_json(report));
  });
}

}  // extern "C"
