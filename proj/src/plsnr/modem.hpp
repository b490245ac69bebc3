// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "plsnr/bitvec.hpp"

namespace plsnr {

class RandomStream;

using cplx = std::complex<double>;
using IqVec = std::vector<cplx>;
using RealVec = std::vector<double>;

inline constexpr double kLlrMax = 40.0;

/// Gaussian channel y = g x + w with w ~ CN(0, noise_variance).
///
/// `noise_variance` is the total variance per complex sample (half per real
/// dimension). When `profile` is non-empty it replaces `gain` and is applied
/// cyclically, one entry per carrier.
struct ChannelSpec {
  double noise_variance = 0.0;
  cplx gain{1.0, 0.0};
  std::vector<cplx> profile;

  cplx gain_at(std::size_t i) const { return profile.empty() ? gain : profile[i % profile.size()]; }
  void validate() const;
  static ChannelSpec awgn_snr_db(double snr_db);
};

// Gray QPSK: (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2).
IqVec qpsk_mod(const BitVec& bits);
IqVec transmit(std::span<const cplx> x, const ChannelSpec& ch, RandomStream& rng);
// Bit LLRs (positive favours 0), clamped to +-kLlrMax. noise_variance == 0
// yields saturated LLRs.
RealVec qpsk_llr(std::span<const cplx> y, const ChannelSpec& ch);

/// Per-subcarrier time-averaged SNR.
///
/// `snr_linear[i] = Pbar_i / varbar_i` with Pbar_i the mean of
/// |g_i|^2 |tx_ij|^2 and varbar_i the mean residual power |rx_ij - g_i tx_ij|^2.
/// `infinite[i]` flags a zero residual (snr_linear is +inf there).
struct SnrRecord {
  std::vector<double> snr_linear;
  std::vector<double> snr_db;
  std::vector<bool> infinite;
  std::vector<double> signal_power;
  std::vector<double> noise_power;
  std::size_t symbols = 0;

  // Total signal over total noise, in dB.
  double aggregate_db() const;
};

/// Time-averaged SNR per carrier. Rows are OFDM symbols (for the PBCH, pass
/// symbols 1 and 3 of each SSB), columns are carriers. The complex gain of
/// each carrier is fitted over all rows, so the record assumes a channel that
/// is constant over the observation.
SnrRecord estimate_snr(std::span<const IqVec> tx_known, std::span<const IqVec> rx);

// RMS error over RMS reference, in percent.
double evm(std::span<const cplx> rx, std::span<const cplx> ref);

double db_to_linear(double db);
double linear_to_db(double lin);

}  // namespace plsnr
