// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/bitvec.hpp"

#include <bit>

#include "plsnr/error.hpp"
#include "plsnr/rng.hpp"

namespace plsnr {

BitVec::BitVec(std::initializer_list<int> bits) : BitVec(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) {
    require(b == 0 || b == 1, "BitVec: entries must be 0 or 1");
    set(i++, b == 1);
  }
}

BitVec BitVec::from_string(std::string_view s) {
  BitVec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i] == '0' || s[i] == '1', "BitVec: invalid character in bit string");
    v.set(i, s[i] == '1');
  }
  return v;
}

BitVec BitVec::from_bits(std::span<const std::uint8_t> bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    require(bits[i] <= 1, "BitVec: entries must be 0 or 1");
    v.set(i, bits[i] != 0);
  }
  return v;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t len) {
  require(hex.size() * 4 >= len, "BitVec: hex string too short for requested length");
  BitVec v(len);
  for (std::size_t i = 0; i < len; ++i) {
    const char c = hex[i / 4];
    int nib;
    if (c >= '0' && c <= '9')
      nib = c - '0';
    else if (c >= 'a' && c <= 'f')
      nib = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      nib = c - 'A' + 10;
    else
      fail(Errc::invalid_argument, "BitVec: invalid hex digit");
    v.set(i, (nib >> (3 - i % 4)) & 1);
  }
  return v;
}

BitVec BitVec::random(std::size_t len, RandomStream& rng) {
  BitVec v(len);
  for (std::size_t i = 0; i < len; ++i) v.set(i, rng.bit());
  return v;
}

bool BitVec::at(std::size_t i) const {
  require(i < len_, "BitVec: index out of range");
  return (*this)[i];
}

BitVec& BitVec::operator^=(const BitVec& other) {
  require(len_ == other.len_, "BitVec: length mismatch in xor");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVec BitVec::slice(std::size_t first, std::size_t count) const {
  require(first + count <= len_, "BitVec: slice out of range");
  BitVec out(count);
  for (std::size_t i = 0; i < count; ++i) out.set(i, (*this)[first + i]);
  return out;
}

BitVec BitVec::concat(const BitVec& tail) const {
  BitVec out(len_ + tail.len_);
  for (std::size_t i = 0; i < len_; ++i) out.set(i, (*this)[i]);
  for (std::size_t i = 0; i < tail.len_; ++i) out.set(len_ + i, tail[i]);
  return out;
}

std::size_t BitVec::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::string BitVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if ((*this)[i]) s[i] = '1';
  return s;
}

std::string BitVec::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::vector<int> nibbles((len_ + 3) / 4, 0);
  for (std::size_t i = 0; i < len_; ++i)
    if ((*this)[i]) nibbles[i / 4] |= 8 >> (i % 4);
  std::string s;
  s.reserve(nibbles.size());
  for (int nib : nibbles) s.push_back(kDigits[nib]);
  return s;
}

std::vector<std::uint8_t> BitVec::to_bits() const {
  std::vector<std::uint8_t> out(len_);
  for (std::size_t i = 0; i < len_; ++i) out[i] = (*this)[i];
  return out;
}

ToeplitzMatrix::ToeplitzMatrix(BitVec diag_seed, std::size_t rows, std::size_t cols)
    : seed_(std::move(diag_seed)), rows_(rows), cols_(cols) {
  require(rows >= 1, "Toeplitz: rows must be >= 1");
  require(seed_.size() + 1 == rows + cols, "Toeplitz: seed length must equal rows + cols - 1");
}

ToeplitzMatrix toeplitz_from_seed(const BitVec& a, std::size_t k, std::size_t lk) {
  return ToeplitzMatrix(a, k, lk);
}

BitVec toeplitz_matvec(const ToeplitzMatrix& a, const BitVec& x) {
  require(x.size() == a.cols(), "toeplitz_matvec: vector length must equal matrix columns");
  BitVec y(a.rows());
  const std::size_t off = a.cols() - 1;
  const BitVec& s = a.diag_seed();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool acc = false;
    for (std::size_t j = 0; j < a.cols(); ++j) acc ^= s[off + i - j] & x[j];
    y.set(i, acc);
  }
  return y;
}

CrcSpec CrcSpec::none() { return CrcSpec{0, BitVec{1}, BitVec{}}; }

CrcSpec CrcSpec::crc11() {
  // Coefficients of x^11 .. x^0.
  return CrcSpec{11, BitVec::from_string("111000100001"), BitVec{}};
}

CrcSpec CrcSpec::from_name(std::string_view name) {
  if (name == "none" || name == "0") return none();
  if (name == "crc11" || name == "11") return crc11();
  fail(Errc::invalid_argument, "unknown CRC '" + std::string(name) + "' (expected none|crc11)");
}

std::string CrcSpec::name() const {
  if (width == 0) return "none";
  if (width == 11 && generator == crc11().generator) return "crc11";
  return "custom" + std::to_string(width);
}

namespace {

void validate(const CrcSpec& spec) {
  require(spec.width <= 32, "CRC: width above 32 is not supported");
  require(spec.generator.size() == spec.width + 1, "CRC: generator must have width+1 coefficients");
  require(spec.generator[0], "CRC: generator degree must equal width");
  require(spec.initial.empty() || spec.initial.size() == spec.width, "CRC: initial register has wrong length");
}

std::uint64_t run_register(const BitVec& data, std::size_t count, const CrcSpec& spec) {
  const std::size_t w = spec.width;
  const std::uint64_t top = std::uint64_t{1} << (w - 1);
  const std::uint64_t mask = (w == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1);
  std::uint64_t poly = 0;
  for (std::size_t i = 1; i <= w; ++i) poly = (poly << 1) | static_cast<std::uint64_t>(spec.generator[i]);
  std::uint64_t reg = 0;
  for (std::size_t i = 0; i < spec.initial.size(); ++i) reg = (reg << 1) | spec.initial[i];
  for (std::size_t i = 0; i < count; ++i) {
    const bool fb = ((reg & top) != 0) != data[i];
    reg = (reg << 1) & mask;
    if (fb) reg ^= poly;
  }
  return reg;
}

}  // namespace

BitVec crc_remainder(const BitVec& data, const CrcSpec& spec) {
  validate(spec);
  BitVec out(spec.width);
  if (spec.width == 0) return out;
  const std::uint64_t reg = run_register(data, data.size(), spec);
  for (std::size_t i = 0; i < spec.width; ++i) out.set(i, (reg >> (spec.width - 1 - i)) & 1U);
  return out;
}

BitVec crc_append(const BitVec& data, const CrcSpec& spec) {
  require(data.size() >= 1, "crc_append: data must be non-empty");
  return data.concat(crc_remainder(data, spec));
}

bool crc_check(const BitVec& data_with_crc, const CrcSpec& spec) {
  validate(spec);
  if (spec.width == 0) return true;
  if (data_with_crc.size() <= spec.width) return false;
  const std::size_t n = data_with_crc.size() - spec.width;
  const BitVec expected = crc_remainder(data_with_crc.slice(0, n), spec);
  return expected == data_with_crc.slice(n, spec.width);
}

}  // namespace plsnr
