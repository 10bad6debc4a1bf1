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
 * @file core.hpp
 * @brief Shared domain types for the cache-aided broadcast delivery library:
 *        system parameters, sorted channel state, request vectors, per-group
 *        load profiles, and the combinatorial helpers everything else uses.
 */

#ifndef CCDEL_CORE_HPP
#define CCDEL_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace ccdel {

/// Error categories surfaced through the C API as status codes.
enum class Errc {
  invalid_argument,
  non_integer_t,
  range,
  divisibility,
  infeasible_rates,
  bad_bracket,
  max_iterations,
  zero_gain,
  decode_failure,
  solver_failure,
  violation,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Exact rational arithmetic for M, t = KM/N and q = M/N, so integrality of t
/// is decidable without floating-point rounding.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "3/2" or a decimal like "1.5" into an exact rational.
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// Exact n-choose-k. Returns 0 when k > n. Requires n <= 64 so every value
/// fits an unsigned 64-bit integer.
std::uint64_t binomial(unsigned n, unsigned k);

enum class PlacementMode { centralized, decentralized };

const char* mode_name(PlacementMode mode);

/// K users, N files, cache size M (in files). t = KM/N and q = M/N are kept
/// as exact rationals.
struct SystemParams {
  std::uint32_t users = 0;   // K
  std::uint32_t files = 0;   // N
  Rational cache_size{0};    // M
  Rational t{0};             // K*M/N
  Rational q{0};             // M/N

  static SystemParams create(std::uint32_t users, std::uint32_t files, const Rational& cache_size);

  bool integer_t() const { return is_integer(t); }
  std::uint32_t t_int() const;
};

/// Mode-aware validation: centralized placement additionally requires t to be
/// a whole number of cached file copies.
SystemParams validate_params(const SystemParams& params, PlacementMode mode);

/// Squared channel gains sorted ascending (the degraded ordering), together
/// with the permutation back to the caller's order.
class ChannelState {
 public:
  /// Sorts arbitrary positive gains and records the permutation.
  explicit ChannelState(std::vector<double> gains);

  std::size_t size() const { return gains_.size(); }
  double gain(std::size_t sorted_index) const { return gains_.at(sorted_index); }
  const std::vector<double>& gains() const { return gains_; }
  /// Maps sorted index -> index in the caller-supplied sequence.
  const std::vector<std::uint32_t>& original_order() const { return original_order_; }

  static constexpr double kMinGain = 1e-12;

 private:
  std::vector<double> gains_;
  std::vector<std::uint32_t> original_order_;
};

/// Per-user file requests, 1-based file indices.
struct RequestVector {
  std::vector<std::uint32_t> d;

  /// Worst case: user k requests file k (requires N >= K).
  static RequestVector distinct(const SystemParams& params);
  static RequestVector from(const SystemParams& params, std::vector<std::uint32_t> requests);
};

/// Per-multicast-group normalized payloads l_i (fractions of one file) and
/// their cumulative sums. Zero-load groups are dropped.
class LoadProfile {
 public:
  LoadProfile() = default;
  explicit LoadProfile(std::vector<double> loads);

  std::size_t group_count() const { return loads_.size(); }
  bool empty() const { return loads_.empty(); }
  double load(std::size_t i) const { return loads_.at(i); }
  double cumulative(std::size_t i) const { return cumulative_.at(i); }
  const std::vector<double>& loads() const { return loads_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  std::vector<double> loads_;
  std::vector<double> cumulative_;
};

}  // namespace ccdel

#endif  // CCDEL_CORE_HPP
