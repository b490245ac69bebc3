// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plsnr/bitvec.hpp"
#include "plsnr/modem.hpp"
#include "plsnr/ofdm.hpp"

namespace plsnr {

class RandomStream;

inline constexpr std::size_t kSsbCarriers = 240;
inline constexpr std::size_t kSsbSymbols = 4;
inline constexpr std::size_t kPbchBits = 864;
inline constexpr std::size_t kPbchCodewords = 3;
inline constexpr std::size_t kPbchCodewordLen = 256;
inline constexpr std::size_t kPbchPadding = kPbchBits - kPbchCodewords * kPbchCodewordLen;  // 96
inline constexpr std::size_t kPbchDataRes = 432;
inline constexpr std::size_t kPbchDmrsRes = 144;
inline constexpr std::size_t kSyncSeqLen = 127;

// --- sequences -------------------------------------------------------------

// BPSK values (+1/-1) of the primary sync sequence for N_ID^(2) in {0,1,2}.
std::vector<int> pss_sequence(int n_id2);
// Secondary sync sequence for N_ID^(1) in [0, 336), N_ID^(2) in {0,1,2}.
std::vector<int> sss_sequence(int n_id1, int n_id2);
// Length-31 Gold sequence c(n) with N_c = 1600.
BitVec gold_sequence(std::uint32_t c_init, std::size_t len);
// 144 QPSK DM-RS symbols for SSB index `issb` (0..7).
IqVec pbch_dmrs(int cell_id, int issb = 0);

// --- PBCH field ------------------------------------------------------------

// Three 256-bit codewords, 96 uniform padding bits, then XOR with
// gold_sequence(cell_id, 864) when `scramble` is set.
BitVec pack_pbch(std::span<const BitVec> codewords, int cell_id, RandomStream& rng, bool scramble = true);
std::array<BitVec, kPbchCodewords> unpack_pbch(const BitVec& field, int cell_id, bool scramble = true);
// Soft counterpart: descrambles field LLRs and drops the padding.
std::array<RealVec, kPbchCodewords> unpack_pbch_llrs(std::span<const double> field_llr, int cell_id,
                                                     bool scramble = true);

// --- grid ------------------------------------------------------------------

enum class ReClass : std::uint8_t { unused, pss, sss, pbch, dmrs, dummy };
const char* re_class_name(ReClass c);

// Offsets in dB relative to the dummy-RE power.
struct PowerProfile {
  double p_pbch_db = 0.0;  // PBCH data and DM-RS
  double p_pss_db = 10.0;
  double p_sss_db = 10.0;
  double p_dummy_db = 0.0;

  void validate() const;
  double offset_db(ReClass c) const;
};

struct GridCensus {
  std::size_t pss = 0, sss = 0, pbch = 0, dmrs = 0, unused = 0, dummy = 0;
};

/// The transmitted occupied grid: the 240 x 4 SSB sits at `ssb_offset` inside
/// an occupied block filled with dummy QPSK.
struct SsbGrid {
  int cell_id = 0;
  std::size_t ssb_offset = 0;
  ResourceGrid grid;
  std::vector<ReClass> cls;
  std::vector<double> offset_db;

  ReClass class_at(std::size_t sym, std::size_t k) const { return cls[sym * grid.carriers + k]; }
  GridCensus census() const;
  // Sum of |RE|^2 as implied by the census and the profile alone.
  double expected_power(const PowerProfile& p) const;
  void write_csv(const std::string& path) const;
};

// SSB layout by symbol and SSB-relative subcarrier; DM-RS positions depend on
// cell_id mod 4.
ReClass ssb_layout(std::size_t sym, std::size_t k, int cell_id);

SsbGrid build_ssb(const BitVec& pbch_bits, const PowerProfile& profile, int cell_id, RandomStream& rng,
                  const OfdmParams& ofdm = {});

// --- receiver --------------------------------------------------------------

struct SyncResult {
  std::size_t offset = 0;  // first CP sample of SSB symbol 0
  double cfo_hz = 0.0;
  double peak = 0.0;  // normalized correlation in [0, 1]
};

inline constexpr double kSyncThreshold = 0.25;

// Normalized cross-correlation against the local PSS symbol (CP included).
SyncResult pss_sync(std::span<const cplx> iq, const OfdmParams& p, int cell_id, double threshold = kSyncThreshold);

enum class ChEstMode {
  ls_interp,  // per-DM-RS least squares, linear in frequency within each symbol
  ls_smooth,  // one least-squares gain over all DM-RS of the block
  genie,      // the true channel is supplied by the caller
};
ChEstMode ch_est_mode_from_name(const std::string& name);
std::string ch_est_mode_name(ChEstMode m);

struct PbchRx {
  std::array<RealVec, kPbchCodewords> codeword_llrs;
  RealVec field_llrs;  // 864, descrambled
  IqVec equalized;     // 432 data REs divided by the channel estimate
  IqVec channel;       // estimate per data RE
  double noise_variance = 0.0;
};

/// LLRs of the three codewords from a demodulated grid. `noise_variance` <= 0
/// estimates it from the DM-RS residual. `true_channel` (per occupied
/// subcarrier) is required for ChEstMode::genie and ignored otherwise.
PbchRx rx_pbch_llrs(const ResourceGrid& obs, int cell_id, ChEstMode mode, double noise_variance = 0.0,
                    std::span<const cplx> true_channel = {}, std::size_t ssb_offset = 72, bool scramble = true);

/// Averaged SNR per SSB subcarrier over symbols 1 and 3 of every transmission,
/// so N = 2 * transmissions.
SnrRecord pbch_snr(std::span<const SsbGrid> tx, std::span<const ResourceGrid> rx);

// --- loopback --------------------------------------------------------------

/// Sample-domain link: y = gain * IFFT(profile .* X) + w, preceded by `lead`
/// and followed by `tail` noise-only samples. `profile` has one entry per
/// occupied subcarrier or is empty.
struct FrameLink {
  double noise_variance = 0.0;
  cplx gain{1.0, 0.0};
  std::vector<cplx> profile;
  std::size_t lead = 0;
  std::size_t tail = 0;
};

struct LoopbackConfig {
  PowerProfile power;
  int cell_id = 0;
  bool scramble = true;
  bool genie_sync = false;
  ChEstMode est = ChEstMode::ls_interp;
  bool known_noise = true;
  OfdmParams ofdm;
};

struct LoopbackResult {
  SsbGrid tx;
  IqVec rx_iq;
  SyncResult sync;
  ResourceGrid rx_grid;
  PbchRx pbch;
};

// Draw order: padding, dummy REs, channel noise.
LoopbackResult frame_loopback(std::span<const BitVec> codewords, const LoopbackConfig& cfg, const FrameLink& link,
                              RandomStream& rng);

}  // namespace plsnr
