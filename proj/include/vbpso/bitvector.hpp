// Copyright 2026 The vbpso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vbpso/errors.hpp"

namespace vbpso {

// Fixed-length bit string packed into 64-bit words. Bits past size() in the
// last word are kept zero so word-wise comparisons and popcounts are exact.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size)
      : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  // From a string of '0'/'1' characters, bit 0 first.
  static BitVector from_string(std::string_view bits) {
    BitVector out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        out.set(i, true);
      } else if (bits[i] != '0') {
        throw DomainError("bit string contains a character other than 0/1");
      }
    }
    return out;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  bool test(std::size_t i) const {
    check_index(i);
    return (*this)[i];
  }

  void set(std::size_t i, bool value) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept {
    words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
  }
  void reset() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  std::string to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if ((*this)[i]) out[i] = '1';
    }
    return out;
  }

  // Lower-case hex of the packed words, least significant word first, each
  // word as 16 digits. Round-trips through from_hex given the bit count.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(words_.size() * 16);
    for (Word w : words_) {
      for (int shift = 60; shift >= 0; shift -= 4) {
        out.push_back(kDigits[(w >> shift) & 0xF]);
      }
    }
    return out;
  }

  static BitVector from_hex(std::string_view hex, std::size_t size) {
    BitVector out(size);
    if (hex.size() != out.words_.size() * 16) {
      throw DomainError("hex bit row has " + std::to_string(hex.size()) +
                        " digits, expected " +
                        std::to_string(out.words_.size() * 16));
    }
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
      Word value = 0;
      for (std::size_t k = 0; k < 16; ++k) {
        const char c = hex[w * 16 + k];
        Word digit = 0;
        if (c >= '0' && c <= '9') {
          digit = static_cast<Word>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
          digit = static_cast<Word>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
          digit = static_cast<Word>(c - 'A' + 10);
        } else {
          throw DomainError("invalid hex digit in bit row");
        }
        value = (value << 4) | digit;
      }
      out.words_[w] = value;
    }
    if (size % kWordBits != 0 && !out.words_.empty() &&
        (out.words_.back() >> (size % kWordBits)) != 0) {
      throw DomainError("hex bit row has bits set past its length");
    }
    return out;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= size_) {
      throw DomainError("bit index " + std::to_string(i) +
                        " out of range for length " + std::to_string(size_));
    }
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

// Number of positions at which a and b differ.
inline std::size_t hamming(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw DomainError("hamming: lengths differ (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return total;
}

}  // namespace vbpso
