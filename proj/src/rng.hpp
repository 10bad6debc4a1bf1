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
 * @file rng.hpp
 * @brief Deterministic random source. mt19937_64 has a standard-specified
 *        output sequence; the bounded-integer and exponential draws below are
 *        implemented by hand because the std distributions are not
 *        specified bit-for-bit across library implementations.
 */

#ifndef CCDEL_RNG_HPP
#define CCDEL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ccdel {

/// splitmix64 finalizer; used to derive independent stream seeds from a base
/// seed and a stream index without correlated low bits.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). Draws below 2^64 mod n are rejected, so the
  /// accepted range is an exact multiple of n and the result is unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t threshold = (-n) % n;  // 2^64 mod n in 64-bit arithmetic
    for (;;) {
      std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  /// Uniform double in (0, 1): 53 random bits centered in the cell so the
  /// result is never 0 or 1.
  double unit_open() {
    std::uint64_t x = engine_();
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unit-mean exponential via inverse CDF. Models Rayleigh-faded power
  /// gains. Clamped away from zero so downstream log2(1+g) stays sane.
  double unit_exponential() {
    double g = -std::log(unit_open());
    return g < 1e-9 ? 1e-9 : g;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccdel

#endif  // CCDEL_RNG_HPP
