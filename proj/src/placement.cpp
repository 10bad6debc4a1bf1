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

#include "placement.hpp"

#include <algorithm>
#include <numeric>

#include "rng.hpp"

namespace ccdel {

namespace {

constexpr std::uint32_t kMaxEnumUsers = 20;
// Bit-level state is O(users * files * file_bits); this cap keeps a worst
// case placement under a gigabyte.
constexpr std::uint64_t kMaxFileBits = 1000000;

// Stream ids for seed mixing; file contents and cache draws must never share
// a stream.
constexpr std::uint64_t kFileStream = 0;
constexpr std::uint64_t kCacheStream = std::uint64_t{1} << 32;

BitVec random_file(std::uint64_t bits, DetRng& rng) {
  BitVec v(bits);
  for (std::uint64_t i = 0; i < bits; ++i) v.set(i, rng.next_u64() & 1u);
  return v;
}

std::vector<BitVec> generate_files(const SystemParams& params, std::uint64_t file_bits,
                                   std::uint64_t seed) {
  std::vector<BitVec> files;
  files.reserve(params.files);
  for (std::uint32_t n = 0; n < params.files; ++n) {
    DetRng rng(mix_seed(seed, kFileStream + n));
    files.push_back(random_file(file_bits, rng));
  }
  return files;
}

}  // namespace

std::vector<std::uint64_t> subsets_lex(std::uint32_t n, std::uint32_t k) {
  if (n > kMaxEnumUsers)
    throw Error(Errc::range,
                "subset enumeration supports at most " + std::to_string(kMaxEnumUsers) +
                    " users, got " + std::to_string(n));
  std::vector<std::uint64_t> out;
  if (k > n) return out;
  out.reserve(binomial(n, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::vector<std::uint32_t> idx(k);
  std::iota(idx.begin(), idx.end(), 1u);
  for (;;) {
    std::uint64_t mask = 0;
    for (std::uint32_t m : idx) mask |= std::uint64_t{1} << (m - 1);
    out.push_back(mask);
    // advance to the next combination in lex order
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::uint32_t> mask_members(std::uint64_t mask) {
  std::vector<std::uint32_t> members;
  for (std::uint32_t k = 1; mask != 0; ++k, mask >>= 1) {
    if (mask & 1u) members.push_back(k);
  }
  return members;
}

bool PlacementState::user_caches(std::uint32_t k, std::uint32_t n, std::uint64_t position) const {
  if (mode == PlacementMode::centralized) {
    std::uint64_t seg = segment_bits == 0 ? 0 : position / segment_bits;
    if (seg >= segment_subsets.size()) return false;
    return (segment_subsets[seg] >> (k - 1)) & 1u;
  }
  const auto& positions = cached.at(k - 1).at(n - 1);
  return std::binary_search(positions.begin(), positions.end(), position);
}

std::uint64_t PlacementState::cache_bits(std::uint32_t k, std::uint32_t n) const {
  if (mode == PlacementMode::centralized) {
    std::uint64_t count = 0;
    for (std::uint64_t mask : segment_subsets)
      if ((mask >> (k - 1)) & 1u) count += segment_bits;
    return count;
  }
  (void)n;
  return cached.at(k - 1).at(n - 1).size();
}

PlacementState centralized_place(const SystemParams& params, std::uint64_t file_bits,
                                 std::uint64_t seed) {
  validate_params(params, PlacementMode::centralized);
  if (params.users > kMaxEnumUsers)
    throw Error(Errc::range, "bit-level placement supports at most " +
                                 std::to_string(kMaxEnumUsers) + " users");
  if (file_bits == 0 || file_bits > kMaxFileBits)
    throw Error(Errc::range, "file_bits must be in 1.." + std::to_string(kMaxFileBits));

  std::uint32_t t = params.t_int();
  std::uint64_t segments = binomial(params.users, t);
  if (file_bits % segments != 0)
    throw Error(Errc::divisibility, "file_bits must be divisible by the segment count " +
                                        std::to_string(segments) + ", got " +
                                        std::to_string(file_bits));

  PlacementState st;
  st.mode = PlacementMode::centralized;
  st.params = params;
  st.file_bits = file_bits;
  st.seed = seed;
  st.files = generate_files(params, file_bits, seed);
  st.segment_subsets = subsets_lex(params.users, t);
  st.segment_bits = file_bits / segments;
  return st;
}

PlacementState decentralized_place(const SystemParams& params, std::uint64_t file_bits,
                                   std::uint64_t seed) {
  validate_params(params, PlacementMode::decentralized);
  if (params.users > kMaxEnumUsers)
    throw Error(Errc::range, "bit-level placement supports at most " +
                                 std::to_string(kMaxEnumUsers) + " users");
  if (file_bits == 0 || file_bits > kMaxFileBits)
    throw Error(Errc::range, "file_bits must be in 1.." + std::to_string(kMaxFileBits));

  PlacementState st;
  st.mode = PlacementMode::decentralized;
  st.params = params;
  st.file_bits = file_bits;
  st.seed = seed;
  st.files = generate_files(params, file_bits, seed);

  Rational cached_exact = params.q * Rational(static_cast<std::int64_t>(file_bits));
  std::uint64_t cached_bits =
      static_cast<std::uint64_t>(cached_exact.numerator() / cached_exact.denominator());
  if (!is_integer(cached_exact)) {
    st.warnings.push_back("cache quota q*file_bits = " + rational_to_string(cached_exact) +
                          " is fractional; each user caches floor = " +
                          std::to_string(cached_bits) + " bits per file");
  }

  st.cached.assign(params.users, std::vector<std::vector<std::uint64_t>>(params.files));
  std::vector<std::uint64_t> pool(file_bits);
  for (std::uint32_t k = 0; k < params.users; ++k) {
    for (std::uint32_t n = 0; n < params.files; ++n) {
      DetRng rng(mix_seed(seed, kCacheStream + std::uint64_t{k} * params.files + n));
      std::iota(pool.begin(), pool.end(), std::uint64_t{0});
      // partial Fisher-Yates: first cached_bits entries become the sample
      for (std::uint64_t i = 0; i < cached_bits; ++i) {
        std::uint64_t j = i + rng.below(file_bits - i);
        std::swap(pool[i], pool[j]);
      }
      auto& positions = st.cached[k][n];
      positions.assign(pool.begin(), pool.begin() + cached_bits);
      std::sort(positions.begin(), positions.end());
    }
  }

  // Invert user->positions into exact-holder classes per file.
  st.classes.resize(params.files);
  std::vector<std::uint64_t> holder(file_bits);
  for (std::uint32_t n = 0; n < params.files; ++n) {
    std::fill(holder.begin(), holder.end(), 0);
    for (std::uint32_t k = 0; k < params.users; ++k) {
      for (std::uint64_t p : st.cached[k][n]) holder[p] |= std::uint64_t{1} << k;
    }
    auto& by_mask = st.classes[n];
    for (std::uint64_t p = 0; p < file_bits; ++p) by_mask[holder[p]].push_back(p);
  }
  return st;
}

LoadProfile group_loads_centralized(const SystemParams& params) {
  validate_params(params, PlacementMode::centralized);
  std::uint32_t k = params.users;
  std::uint32_t t = params.t_int();
  std::uint64_t denom = binomial(k, t);
  std::vector<double> loads;
  loads.reserve(k - t);
  for (std::uint32_t i = 1; i + t <= k; ++i) {
    loads.push_back(to_double(Rational(static_cast<std::int64_t>(binomial(k - i, t)),
                                       static_cast<std::int64_t>(denom))));
  }
  return LoadProfile(std::move(loads));
}

LoadProfile group_loads_decentralized(const SystemParams& params) {
  validate_params(params, PlacementMode::decentralized);
  double q = to_double(params.q);
  std::vector<double> loads;
  loads.reserve(params.users);
  double v = 1.0;
  for (std::uint32_t i = 1; i <= params.users; ++i) {
    v *= 1.0 - q;
    loads.push_back(v);
  }
  return LoadProfile(std::move(loads));
}

double expected_class_fraction(const SystemParams& params, std::uint32_t subset_size) {
  if (subset_size > params.users)
    throw Error(Errc::range, "subset size exceeds user count");
  double q = to_double(params.q);
  double v = 1.0;
  for (std::uint32_t i = 0; i < subset_size; ++i) v *= q;
  for (std::uint32_t i = 0; i < params.users - subset_size; ++i) v *= 1.0 - q;
  return v;
}

}  // namespace ccdel
