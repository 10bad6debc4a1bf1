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

/**
 * @file experiments.hpp
 * @brief Monte Carlo studies over Rayleigh-faded channels: completion-time
 *        sweeps across cache sizes, and bulk verification of the scheme
 *        ordering guarantees (concurrent never beats orthogonal from above,
 *        randomized placement costs at most 1.5x the deterministic one).
 *
 * All runs are deterministic for a fixed base seed: trial j draws its channel
 * from an independent stream derived from (base seed, j), and aggregation
 * order is fixed regardless of thread count.
 */

#ifndef CCDEL_EXPERIMENTS_HPP
#define CCDEL_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"
#include "delivery.hpp"

namespace ccdel {

/// Squared gains of independent unit-mean Rayleigh fades (exponential with
/// unit mean), sorted ascending by ChannelState.
ChannelState sample_channel(std::uint32_t users, std::uint64_t seed);

/// {0, N/4, N/2, 3N/4, N}. Fractional entries are kept; deterministic
/// placement rows are emitted only where t = K*M/N is an integer.
std::vector<Rational> default_m_grid(std::uint32_t files);

struct SweepConfig {
  std::uint32_t users = 8;
  std::uint32_t files = 8;
  std::vector<Rational> m_grid;  // empty -> default_m_grid(files)
  std::uint32_t trials = 10000;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;  // worker threads; 0 -> hardware count
};

struct SweepRow {
  Rational cache_size;
  PlacementMode mode;
  Scheme scheme;
  double mean_time = 0.0;
  double stderr_time = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint32_t trials = 0;
};

/// Randomized-over-deterministic orthogonal time ratio per trial; defined as
/// 1 when both times are zero (everything cached).
struct GapRow {
  Rational cache_size;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
  std::vector<GapRow> gaps;
};

SweepResult run_sweep(const SweepConfig& config);

/// Two CSV sections separated by a blank line:
///   M,mode,scheme,mean_time,stderr_time,trials
///   M,metric,value            (metric is max_ratio or mean_ratio)
std::string sweep_csv(const SweepResult& result);

struct VerifyConfig {
  std::vector<std::uint32_t> k_list;  // empty -> {2, 4, 8}
  std::uint32_t trials = 10000;
  std::uint64_t base_seed = 1;
  double gap_bound = 1.5;
};

struct VerifyFailure {
  std::string suite;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t checks = 0;
  std::vector<VerifyFailure> failures;
  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

/// Checks, per trial: concurrent time <= orthogonal time for both placement
/// modes, and the orthogonal time ratio within [1, gap_bound]. Adds
/// deterministic instances: equal gains force equality, strictly increasing
/// gains force strict improvement. Failures are returned as data, with the
/// seed that reproduces them.
VerifyReport verify_theorems(const VerifyConfig& config);

std::string verify_to_json(const VerifyReport& report, int indent = 2);

}  // namespace ccdel

#endif  // CCDEL_EXPERIMENTS_HPP
