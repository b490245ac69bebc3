// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plsnr/modem.hpp"

namespace plsnr {

/// Numerology of the simulated carrier. The occupied block of `occupied`
/// subcarriers is centred on DC: occupied index k maps to FFT bin
/// (k - occupied / 2) mod fft_size.
struct OfdmParams {
  double scs_hz = 120e3;
  std::size_t fft_size = 512;
  std::size_t cp_len = 36;
  std::size_t occupied = 384;  // 32 resource blocks, ~46 MHz of a 50 MHz channel
  std::size_t symbols = 4;

  double sample_rate() const { return scs_hz * static_cast<double>(fft_size); }
  std::size_t symbol_len() const { return fft_size + cp_len; }
  std::size_t frame_len() const { return symbols * symbol_len(); }
  void validate() const;
};

/// symbols x carriers complex grid, row-major by symbol.
struct ResourceGrid {
  std::size_t symbols = 0;
  std::size_t carriers = 0;
  std::vector<cplx> re;

  ResourceGrid() = default;
  ResourceGrid(std::size_t nsym, std::size_t ncar) : symbols(nsym), carriers(ncar), re(nsym * ncar) {}
  cplx& at(std::size_t sym, std::size_t k) { return re[sym * carriers + k]; }
  const cplx& at(std::size_t sym, std::size_t k) const { return re[sym * carriers + k]; }
  std::span<const cplx> row(std::size_t sym) const { return {re.data() + sym * carriers, carriers}; }
};

// Unitary DFT of length n (forward uses e^{-j...}).
void dft(std::span<const cplx> in, std::span<cplx> out, bool inverse);

IqVec ofdm_mod(const ResourceGrid& grid, const OfdmParams& p);
// Demodulates p.symbols symbols starting at sample `start` (first CP sample).
ResourceGrid ofdm_demod(std::span<const cplx> iq, const OfdmParams& p, std::size_t start = 0);

}  // namespace plsnr
