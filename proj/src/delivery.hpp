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
 * @file delivery.hpp
 * @brief Coded delivery over the broadcast channel.
 *
 * Multicast sets are grouped by their weakest member: group i holds every set
 * whose minimum user index is i, and must be decodable by user i. Two
 * physical schedules deliver the groups:
 *
 *  - orthogonal: groups take turns, group i at user i's capacity
 *    log2(1 + gain_i); total time is the sum of group durations.
 *  - concurrent: all groups superpose for one window of length T; group i's
 *    rate is load_i / T and T solves the capacity-region boundary equation.
 *
 * Times are in file transmission units: delivering one whole file to a user
 * with capacity c takes 1/c.
 */

#ifndef CCDEL_DELIVERY_HPP
#define CCDEL_DELIVERY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"
#include "placement.hpp"

namespace ccdel {

enum class Scheme { orthogonal, concurrent };

const char* scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string& name);
PlacementMode parse_mode(const std::string& name);

/// Multicast sets of one delivery group, as user bitmasks.
/// Segment scheme, group i: all (t+1)-subsets of {1..K} with minimum i, in
/// lexicographic order.
std::vector<std::uint64_t> group_sets_centralized(const SystemParams& params, std::uint32_t group);

/// Randomized scheme, group i: all subsets of {i..K} containing i, ordered by
/// size then lexicographically.
std::vector<std::uint64_t> group_sets_decentralized(std::uint32_t users, std::uint32_t group);

/// Fraction of one file a single multicast set carries: 1/C(K,t) for the
/// segment scheme, q^(|S|-1) * (1-q)^(K-|S|+1) expected for the randomized
/// scheme.
double set_payload_fraction(const SystemParams& params, PlacementMode mode,
                            std::uint32_t set_size);

struct ScheduleEntry {
  std::uint32_t group = 0;  // 1-based; also the weakest member of its sets
  double load = 0.0;        // fraction of one file
  double rate = 0.0;        // bits per channel use
  double duration = 0.0;    // load / rate; the full window under concurrent
  std::uint64_t set_count = 0;
  std::vector<std::uint64_t> sets;  // user bitmasks; filled only on request
};

struct Schedule {
  PlacementMode mode = PlacementMode::centralized;
  Scheme scheme = Scheme::orthogonal;
  SystemParams params;
  std::vector<double> gains;                 // ascending, one per user
  std::vector<std::uint32_t> original_order; // sorted index -> input index
  double total_time = 0.0;
  std::vector<ScheduleEntry> entries;
  std::vector<double> power_shares;     // concurrent only, one per group
  double region_residual = 0.0;         // concurrent: region_lhs - 1 at the root
  std::vector<double> per_user_finish;  // one per user, sorted order
  bool with_sets = false;
};

/// Builds the delivery schedule for the given placement mode and physical
/// scheme. The channel must have one gain per user. Set listings are
/// materialized only when with_sets is true and the total set count is at
/// most 100000.
Schedule build_schedule(const SystemParams& params, PlacementMode mode, Scheme scheme,
                        const ChannelState& channel, bool with_sets);

/// Renders a schedule as a JSON document; shape documented in the README.
std::string schedule_to_json(const Schedule& schedule, int indent = 2);

struct TraceResult {
  bool ok = false;
  std::vector<std::string> failures;           // one entry per undecodable user
  std::uint64_t message_count = 0;             // non-empty coded messages sent
  std::uint64_t total_message_bits = 0;
  std::vector<double> actual_group_loads;      // transmitted bits / file_bits
  std::vector<std::string> warnings;           // propagated from placement
};

/// Replays delivery bit by bit: builds every multicast message, hands each
/// user the groups it can decode, cancels cached constituents, and checks
/// that every user reconstructs its requested file exactly.
TraceResult simulate_decode(const PlacementState& placement, const RequestVector& requests);

std::string trace_to_json(const TraceResult& trace, const PlacementState& placement,
                          const RequestVector& requests, const Schedule& schedule, int indent = 2);

}  // namespace ccdel

#endif  // CCDEL_DELIVERY_HPP
