// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "plsnr/bitvec.hpp"

namespace plsnr {

// Polar code over x = u F^{(x)m}, F = [[1,0],[1,1]], natural order (no bit
// reversal). The CRC of `crc.width` bits is appended to the payload and the
// resulting k_info bits are placed on `info_set` in ascending index order.
struct PolarCodeSpec {
  std::size_t n = 0;
  std::size_t k_info = 0;
  std::vector<std::size_t> info_set;  // sorted ascending
  CrcSpec crc = CrcSpec::none();

  std::size_t payload_len() const { return k_info - crc.width; }
};

enum class PolarConstruction { nr, bhattacharyya };

PolarConstruction construction_from_name(std::string_view name);

// Indices of [0, n) in ascending reliability order.
std::vector<std::size_t> nr_reliability(std::size_t n);
std::vector<std::size_t> bhattacharyya_reliability(std::size_t n, double design_snr_db = 0.0);

PolarCodeSpec build_spec(std::size_t n, std::size_t payload_len, const CrcSpec& crc,
                         std::span<const std::size_t> reliability);

// In-place butterfly of the Arikan kernel; its own inverse over GF(2).
BitVec polar_transform(BitVec u);
BitVec polar_encode(const BitVec& payload, const PolarCodeSpec& spec);

struct DecodeEntry {
  BitVec payload;  // info bits without CRC
  bool crc_ok = false;
  double path_metric = 0.0;
  BitVec codeword;
};

// Sorted by ascending path metric (most likely first); ties keep the lower
// path slot first.
struct DecodeList {
  std::vector<DecodeEntry> entries;
  std::size_t list_size = 0;
};

/// CRC-aided successive cancellation list decoder.
///
/// `llr[j] = ln P(x_j = 0 | y) / P(x_j = 1 | y)`. Check-node updates use the
/// exact box-plus and the path metric accumulates ln(1 + exp(-(1-2u) lambda))
/// per decided bit, so a finished path's metric equals -ln P(x | y) under a
/// uniform prior on x; see `codeword_metric`.
DecodeList scl_decode(std::span<const double> llr, const PolarCodeSpec& spec, std::size_t list_size);

struct DecodedPayload {
  BitVec payload;
  bool crc_ok = false;
};

// Best CRC-passing entry, otherwise entry 0 with crc_ok = false.
DecodedPayload decode_payload(const DecodeList& list);

// -ln P(x | y) for a codeword under independent bit LLRs.
double codeword_metric(std::span<const double> llr, const BitVec& codeword);

// Exact check-node combination 2 atanh(tanh(a/2) tanh(b/2)), stable form.
double boxplus(double a, double b);
// ln(1 + e^x) without overflow.
double softplus(double x);

}  // namespace plsnr
