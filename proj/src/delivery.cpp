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

#include "delivery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "gbc.hpp"
#include "solver.hpp"

namespace ccdel {

namespace {

// Materializing every multicast set in a schedule is capped so JSON output
// stays bounded; counts are always reported.
constexpr std::uint64_t kMaxMaterializedSets = 100000;

}  // namespace

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::orthogonal ? "orthogonal" : "concurrent";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "orthogonal") return Scheme::orthogonal;
  if (name == "concurrent") return Scheme::concurrent;
  throw Error(Errc::invalid_argument,
              "unknown scheme '" + name + "' (expected orthogonal or concurrent)");
}

PlacementMode parse_mode(const std::string& name) {
  if (name == "centralized") return PlacementMode::centralized;
  if (name == "decentralized") return PlacementMode::decentralized;
  throw Error(Errc::invalid_argument,
              "unknown mode '" + name + "' (expected centralized or decentralized)");
}

std::vector<std::uint64_t> group_sets_centralized(const SystemParams& params,
                                                  std::uint32_t group) {
  validate_params(params, PlacementMode::centralized);
  std::uint32_t t = params.t_int();
  if (group == 0 || group + t > params.users)
    throw Error(Errc::range, "group index out of range");
  // Tails are the t-subsets of {group+1 .. K}; prepending the group leader
  // preserves lexicographic order.
  std::vector<std::uint64_t> tails = subsets_lex(params.users - group, t);
  std::uint64_t leader = std::uint64_t{1} << (group - 1);
  for (auto& mask : tails) mask = (mask << group) | leader;
  return tails;
}

std::vector<std::uint64_t> group_sets_decentralized(std::uint32_t users, std::uint32_t group) {
  if (group == 0 || group > users) throw Error(Errc::range, "group index out of range");
  std::vector<std::uint64_t> out;
  std::uint32_t rest = users - group;
  std::uint64_t leader = std::uint64_t{1} << (group - 1);
  for (std::uint32_t extra = 0; extra <= rest; ++extra) {
    std::vector<std::uint64_t> tails = subsets_lex(rest, extra);
    for (std::uint64_t mask : tails) out.push_back((mask << group) | leader);
  }
  return out;
}

double set_payload_fraction(const SystemParams& params, PlacementMode mode,
                            std::uint32_t set_size) {
  if (set_size == 0 || set_size > params.users)
    throw Error(Errc::range, "multicast set size out of range");
  if (mode == PlacementMode::centralized) {
    return 1.0 / static_cast<double>(binomial(params.users, params.t_int()));
  }
  double q = to_double(params.q);
  double v = 1.0;
  for (std::uint32_t i = 0; i + 1 < set_size; ++i) v *= q;
  for (std::uint32_t i = 0; i < params.users - set_size + 1; ++i) v *= 1.0 - q;
  return v;
}

Schedule build_schedule(const SystemParams& params, PlacementMode mode, Scheme scheme,
                        const ChannelState& channel, bool with_sets) {
  validate_params(params, mode);
  if (channel.size() != params.users)
    throw Error(Errc::invalid_argument, "channel has " + std::to_string(channel.size()) +
                                            " gains for " + std::to_string(params.users) +
                                            " users");

  Schedule s;
  s.mode = mode;
  s.scheme = scheme;
  s.params = params;
  s.gains = channel.gains();
  s.original_order = channel.original_order();
  s.with_sets = with_sets;

  LoadProfile loads = mode == PlacementMode::centralized ? group_loads_centralized(params)
                                                         : group_loads_decentralized(params);
  std::size_t g = loads.group_count();
  s.per_user_finish.assign(params.users, 0.0);
  if (g == 0) return s;  // everything is cached; nothing to send

  s.entries.resize(g);
  for (std::size_t i = 0; i < g; ++i) {
    s.entries[i].group = static_cast<std::uint32_t>(i + 1);
    s.entries[i].load = loads.load(i);
    if (mode == PlacementMode::centralized) {
      s.entries[i].set_count = binomial(params.users - s.entries[i].group, params.t_int());
    } else {
      s.entries[i].set_count = std::uint64_t{1} << (params.users - s.entries[i].group);
    }
  }

  if (scheme == Scheme::orthogonal) {
    double total = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
      double rate = single_user_capacity(s.gains[i]);
      s.entries[i].rate = rate;
      s.entries[i].duration = loads.load(i) / rate;
      total += s.entries[i].duration;
    }
    s.total_time = total;
    // User k listens until the last group it belongs to has been sent.
    double prefix = 0.0;
    std::vector<double> finish_by_group(g);
    for (std::size_t i = 0; i < g; ++i) {
      prefix += s.entries[i].duration;
      finish_by_group[i] = prefix;
    }
    for (std::uint32_t k = 0; k < params.users; ++k)
      s.per_user_finish[k] = finish_by_group[std::min<std::size_t>(k, g - 1)];
  } else {
    double hint = 0.0;
    for (std::size_t i = 0; i < g; ++i) hint += loads.load(i) / single_user_capacity(s.gains[i]);
    BoundaryFunction fn = boundary_from_loads(loads, s.gains);
    double t = solve_boundary(fn, hint);
    std::vector<double> rates(g);
    for (std::size_t i = 0; i < g; ++i) {
      rates[i] = loads.load(i) / t;
      s.entries[i].rate = rates[i];
      s.entries[i].duration = t;
    }
    std::vector<double> head_gains(s.gains.begin(), s.gains.begin() + g);
    s.power_shares = power_from_rates(rates, head_gains);
    s.region_residual = region_lhs(rates, head_gains) - 1.0;
    s.total_time = t;
    for (std::uint32_t k = 0; k < params.users; ++k) s.per_user_finish[k] = t;
  }

  if (with_sets) {
    std::uint64_t total_sets = 0;
    for (const auto& e : s.entries) total_sets += e.set_count;
    if (total_sets <= kMaxMaterializedSets) {
      for (auto& e : s.entries) {
        e.sets = mode == PlacementMode::centralized
                     ? group_sets_centralized(params, e.group)
                     : group_sets_decentralized(params.users, e.group);
      }
    } else {
      s.with_sets = false;
    }
  }
  return s;
}

std::string schedule_to_json(const Schedule& schedule, int indent) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(schedule.mode);
  j["scheme"] = scheme_name(schedule.scheme);
  j["users"] = schedule.params.users;
  j["files"] = schedule.params.files;
  j["cache_size"] = rational_to_string(schedule.params.cache_size);
  j["gains"] = schedule.gains;
  j["original_order"] = schedule.original_order;
  j["total_time"] = schedule.total_time;
  j["group_count"] = schedule.entries.size();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : schedule.entries) {
    nlohmann::ordered_json je;
    je["group"] = e.group;
    je["load"] = e.load;
    je["rate"] = e.rate;
    je["duration"] = e.duration;
    je["set_count"] = e.set_count;
    if (schedule.with_sets) {
      nlohmann::ordered_json sets = nlohmann::ordered_json::array();
      for (std::uint64_t mask : e.sets) sets.push_back(mask_members(mask));
      je["sets"] = std::move(sets);
    }
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  if (schedule.scheme == Scheme::concurrent) {
    j["power_shares"] = schedule.power_shares;
    j["region_residual"] = schedule.region_residual;
  }
  j["per_user_finish"] = schedule.per_user_finish;
  return j.dump(indent);
}

TraceResult simulate_decode(const PlacementState& placement, const RequestVector& requests) {
  const SystemParams& params = placement.params;
  std::uint32_t users = params.users;
  std::uint64_t file_bits = placement.file_bits;
  if (requests.d.size() != users)
    throw Error(Errc::invalid_argument, "request vector does not match user count");

  bool central = placement.mode == PlacementMode::centralized;
  std::uint32_t group_count =
      central ? users - params.t_int() : users;

  TraceResult tr;
  tr.warnings = placement.warnings;
  tr.actual_group_loads.assign(group_count, 0.0);

  // Reconstruction state per user: which positions of its requested file it
  // holds, and with what values.
  std::vector<BitVec> have(users), value(users);
  for (std::uint32_t k = 0; k < users; ++k) {
    have[k] = BitVec(file_bits);
    value[k] = BitVec(file_bits);
    const BitVec& want = placement.files[requests.d[k] - 1];
    for (std::uint64_t p = 0; p < file_bits; ++p) {
      if (placement.user_caches(k + 1, requests.d[k], p)) {
        have[k].set(p, true);
        value[k].set(p, want.get(p));
      }
    }
  }

  // Positions of the constituent a member contributes to a set's message.
  std::unordered_map<std::uint64_t, std::size_t> segment_index;
  if (central) {
    for (std::size_t i = 0; i < placement.segment_subsets.size(); ++i)
      segment_index[placement.segment_subsets[i]] = i;
  }
  static const std::vector<std::uint64_t> kNoPositions;
  auto constituent_positions = [&](std::uint64_t set_mask,
                                   std::uint32_t member) -> std::vector<std::uint64_t> {
    std::uint64_t rest = set_mask & ~(std::uint64_t{1} << (member - 1));
    std::uint32_t file = requests.d[member - 1];
    if (central) {
      auto it = segment_index.find(rest);
      if (it == segment_index.end())
        throw Error(Errc::decode_failure, "multicast set references a non-existent segment");
      std::vector<std::uint64_t> pos(placement.segment_bits);
      std::iota(pos.begin(), pos.end(), it->second * placement.segment_bits);
      return pos;
    }
    const auto& classes = placement.classes[file - 1];
    auto it = classes.find(rest);
    return it == classes.end() ? kNoPositions : it->second;
  };

  for (std::uint32_t group = 1; group <= group_count; ++group) {
    std::vector<std::uint64_t> sets =
        central ? group_sets_centralized(params, group)
                : group_sets_decentralized(users, group);
    for (std::uint64_t set_mask : sets) {
      std::vector<std::uint32_t> members = mask_members(set_mask);
      std::vector<std::vector<std::uint64_t>> positions(members.size());
      std::vector<BitVec> constituents(members.size());
      BitVec message;
      std::uint64_t length = 0;
      for (std::size_t m = 0; m < members.size(); ++m) {
        positions[m] = constituent_positions(set_mask, members[m]);
        constituents[m] = placement.files[requests.d[members[m] - 1] - 1].gather(positions[m]);
        message.xor_with(constituents[m]);
        length = std::max<std::uint64_t>(length, positions[m].size());
      }
      if (length == 0) continue;
      ++tr.message_count;
      tr.total_message_bits += length;
      tr.actual_group_loads[group - 1] += static_cast<double>(length);

      // Every member is at least as strong as the group leader, so every
      // member receives the message; each cancels what it has cached.
      for (std::size_t m = 0; m < members.size(); ++m) {
        std::uint32_t k = members[m];
        BitVec rebuilt = message;
        bool cache_ok = true;
        for (std::size_t o = 0; o < members.size() && cache_ok; ++o) {
          if (o == m) continue;
          std::uint32_t peer_file = requests.d[members[o] - 1];
          for (std::uint64_t p : positions[o]) {
            if (!placement.user_caches(k, peer_file, p)) {
              tr.failures.push_back("user " + std::to_string(k) +
                                    ": expected cached bit of file " + std::to_string(peer_file) +
                                    " at position " + std::to_string(p) + " is absent");
              cache_ok = false;
              break;
            }
          }
          if (cache_ok) rebuilt.xor_with(constituents[o]);
        }
        if (!cache_ok) continue;
        // Beyond its own constituent the rebuilt word must be pure padding.
        for (std::uint64_t p = positions[m].size(); p < rebuilt.size(); ++p) {
          if (rebuilt.get(p)) {
            tr.failures.push_back("user " + std::to_string(k) +
                                  ": nonzero padding after cancelling a coded message");
            break;
          }
        }
        for (std::size_t idx = 0; idx < positions[m].size(); ++idx) {
          value[k - 1].set(positions[m][idx], rebuilt.get(idx));
          have[k - 1].set(positions[m][idx], true);
        }
      }
    }
  }

  for (std::uint32_t k = 0; k < users; ++k) {
    const BitVec& want = placement.files[requests.d[k] - 1];
    std::uint64_t missing = 0, wrong = 0;
    std::int64_t first_missing = -1, first_wrong = -1;
    for (std::uint64_t p = 0; p < file_bits; ++p) {
      if (!have[k].get(p)) {
        if (missing == 0) first_missing = static_cast<std::int64_t>(p);
        ++missing;
      } else if (value[k].get(p) != want.get(p)) {
        if (wrong == 0) first_wrong = static_cast<std::int64_t>(p);
        ++wrong;
      }
    }
    if (missing > 0)
      tr.failures.push_back("user " + std::to_string(k + 1) + ": " + std::to_string(missing) +
                            " bits of file " + std::to_string(requests.d[k]) +
                            " unrecovered (first at position " + std::to_string(first_missing) +
                            ")");
    if (wrong > 0)
      tr.failures.push_back("user " + std::to_string(k + 1) + ": " + std::to_string(wrong) +
                            " recovered bits differ from the source (first at position " +
                            std::to_string(first_wrong) + ")");
  }

  for (double& load : tr.actual_group_loads) load /= static_cast<double>(file_bits);
  tr.ok = tr.failures.empty();
  return tr;
}

std::string trace_to_json(const TraceResult& trace, const PlacementState& placement,
                          const RequestVector& requests, const Schedule& schedule, int indent) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(placement.mode);
  j["users"] = placement.params.users;
  j["files"] = placement.params.files;
  j["cache_size"] = rational_to_string(placement.params.cache_size);
  j["file_bits"] = placement.file_bits;
  j["seed"] = placement.seed;
  j["requests"] = requests.d;
  j["decode_ok"] = trace.ok;
  j["failures"] = trace.failures;
  j["message_count"] = trace.message_count;
  j["total_message_bits"] = trace.total_message_bits;
  j["actual_group_loads"] = trace.actual_group_loads;
  std::vector<double> expected;
  for (const auto& e : schedule.entries) expected.push_back(e.load);
  j["expected_group_loads"] = expected;
  j["warnings"] = trace.warnings;
  j["schedule"] = nlohmann::ordered_json::parse(schedule_to_json(schedule, indent));
  return j.dump(indent);
}

}  // namespace ccdel
