// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plsnr {

class RandomStream;

/// Fixed-length GF(2) vector, packed into 64-bit words. Index 0 is the first
/// bit. Bits beyond `size()` in the last word are kept at zero so word-wise
/// equality and popcount are exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}
  BitVec(std::initializer_list<int> bits);

  // Parses a string of '0'/'1' characters.
  static BitVec from_string(std::string_view s);
  static BitVec from_bits(std::span<const std::uint8_t> bits);
  // Hex digits, most significant nibble first, truncated/padded to `len` bits;
  // bit 0 is the MSB of the first nibble.
  static BitVec from_hex(std::string_view hex, std::size_t len);
  static BitVec random(std::size_t len, RandomStream& rng);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool b) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (b)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  BitVec slice(std::size_t first, std::size_t count) const;
  BitVec concat(const BitVec& tail) const;
  std::size_t popcount() const;
  bool is_zero() const { return popcount() == 0; }

  std::string to_string() const;
  std::string to_hex() const;
  std::vector<std::uint8_t> to_bits() const;
  std::span<const std::uint64_t> words() const { return words_; }

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// k x (l-k) Toeplitz matrix over GF(2), stored by its diagonal seed.
/// entry(i, j) = diag_seed[(cols - 1) + i - j].
class ToeplitzMatrix {
 public:
  ToeplitzMatrix(BitVec diag_seed, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BitVec& diag_seed() const { return seed_; }
  bool entry(std::size_t i, std::size_t j) const { return seed_[(cols_ - 1) + i - j]; }

 private:
  BitVec seed_;
  std::size_t rows_;
  std::size_t cols_;
};

ToeplitzMatrix toeplitz_from_seed(const BitVec& a, std::size_t k, std::size_t lk);
BitVec toeplitz_matvec(const ToeplitzMatrix& a, const BitVec& x);

/// CRC over GF(2). `generator` holds the width+1 polynomial coefficients,
/// highest degree first (generator[0] is the x^width coefficient).
struct CrcSpec {
  std::size_t width = 0;
  BitVec generator;
  BitVec initial;  // register preload, `width` bits; empty means zero

  static CrcSpec none();
  // x^11 + x^10 + x^9 + x^5 + 1, zero preload.
  static CrcSpec crc11();
  static CrcSpec from_name(std::string_view name);
  std::string name() const;
};

BitVec crc_remainder(const BitVec& data, const CrcSpec& spec);
BitVec crc_append(const BitVec& data, const CrcSpec& spec);
bool crc_check(const BitVec& data_with_crc, const CrcSpec& spec);

}  // namespace plsnr
