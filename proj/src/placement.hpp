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
 * @file placement.hpp
 * @brief Cache placement: the deterministic segment scheme (files split into
 *        one segment per t-subset of users, user k caches a segment iff k is
 *        in its subset) and the randomized scheme (each user independently
 *        caches a uniform fraction q = M/N of every file). Also the per-group
 *        delivery loads each scheme induces.
 *
 * Users are identified with ascending-gain channel indices: user 1 is the
 * weakest receiver. Subsets of users are stored as bitmasks with bit (k-1)
 * for user k.
 */

#ifndef CCDEL_PLACEMENT_HPP
#define CCDEL_PLACEMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bits.hpp"
#include "core.hpp"

namespace ccdel {

/// All size-k subsets of {1..n} as bitmasks, in lexicographic order of the
/// sorted member tuples. n <= 20 keeps enumeration sizes sane.
std::vector<std::uint64_t> subsets_lex(std::uint32_t n, std::uint32_t k);

std::vector<std::uint32_t> mask_members(std::uint64_t mask);

struct PlacementState {
  PlacementMode mode = PlacementMode::centralized;
  SystemParams params;
  std::uint64_t file_bits = 0;
  std::uint64_t seed = 0;

  /// Library contents, one vector per file, generated from the seed.
  std::vector<BitVec> files;

  // Segment scheme: segment j of every file holds bits
  // [j*segment_bits, (j+1)*segment_bits) and is cached by exactly the users
  // in segment_subsets[j].
  std::vector<std::uint64_t> segment_subsets;  // lex order of t-subsets
  std::uint64_t segment_bits = 0;

  // Randomized scheme: positions of file n cached by exactly the user set
  // `mask`, ascending. Positions cached by nobody sit under mask 0.
  std::vector<std::map<std::uint64_t, std::vector<std::uint64_t>>> classes;
  // cached[k][n]: ascending positions of file n held by user k.
  std::vector<std::vector<std::vector<std::uint64_t>>> cached;

  std::vector<std::string> warnings;

  /// True when user k (1-based) holds bit `position` of file `n` (1-based).
  bool user_caches(std::uint32_t k, std::uint32_t n, std::uint64_t position) const;

  /// Bits of file n held by user k, for cache-size invariants.
  std::uint64_t cache_bits(std::uint32_t k, std::uint32_t n) const;
};

/// Deterministic placement. Requires integer t and that the number of
/// segments divides file_bits.
PlacementState centralized_place(const SystemParams& params, std::uint64_t file_bits,
                                 std::uint64_t seed);

/// Randomized placement: every user caches exactly floor(q * file_bits)
/// positions of every file, chosen uniformly without replacement. A warning
/// is recorded when q * file_bits is fractional.
PlacementState decentralized_place(const SystemParams& params, std::uint64_t file_bits,
                                   std::uint64_t seed);

/// Per-group loads under the segment scheme, group i = multicast sets whose
/// weakest member is user i: l_i = C(K-i, t) / C(K, t), i = 1..K-t.
LoadProfile group_loads_centralized(const SystemParams& params);

/// Per-group loads under the randomized scheme: l_i = (1-q)^i, i = 1..K.
LoadProfile group_loads_decentralized(const SystemParams& params);

/// Expected fraction of a file cached by one given user subset of the stated
/// size and by nobody else: q^size * (1-q)^(K-size).
double expected_class_fraction(const SystemParams& params, std::uint32_t subset_size);

}  // namespace ccdel

#endif  // CCDEL_PLACEMENT_HPP
