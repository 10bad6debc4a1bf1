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
 * @file bits.hpp
 * @brief Packed bit vectors for file contents and coded payloads. XOR between
 *        unequal lengths zero-pads the shorter operand, matching how coded
 *        transmissions combine segments of different sizes.
 */

#ifndef CCDEL_BITS_HPP
#define CCDEL_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ccdel {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t bit_count) : bits_(bit_count), words_((bit_count + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  bool empty() const { return bits_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool value) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  /// XOR-accumulate; grows to the longer operand, shorter side zero-padded.
  void xor_with(const BitVec& other) {
    if (other.bits_ > bits_) {
      bits_ = other.bits_;
      words_.resize(other.words_.size(), 0);
    }
    for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
  }

  /// Bits at the given positions of this vector, packed in argument order.
  BitVec gather(const std::vector<std::uint64_t>& positions) const {
    BitVec out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) out.set(i, get(positions[i]));
    return out;
  }

  /// Contiguous [start, start+len) slice.
  BitVec slice(std::size_t start, std::size_t len) const {
    BitVec out(len);
    for (std::size_t i = 0; i < len; ++i) out.set(i, get(start + i));
    return out;
  }

  bool operator==(const BitVec& other) const {
    if (bits_ != other.bits_) return false;
    return words_ == other.words_;
  }
  bool operator!=(const BitVec& other) const { return !(*this == other); }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ccdel

#endif  // CCDEL_BITS_HPP
