// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "plsnr/bitvec.hpp"
#include "plsnr/modem.hpp"
#include "plsnr/polar.hpp"
#include "plsnr/secrecy.hpp"

namespace plsnr {

class RandomStream;

enum class SeedPolicy { fixed, per_trial };

SeedPolicy seed_policy_from_name(const std::string& name);
std::string seed_policy_name(SeedPolicy p);

/// Everything a distinguishing experiment holds fixed across trials.
/// `code.payload_len()` must equal `pls.l`.
struct DerSetup {
  SecrecyParams pls;
  PolarCodeSpec code;
  BitVec m1, m2;
  SecrecySeed seed;
  SeedPolicy seed_policy = SeedPolicy::fixed;
  bool crc_filter = true;
  std::size_t list_size = 8;

  void validate() const;
};

/// Maps a transmitted codeword to Eve's bit LLRs. Must be callable from
/// several threads at once; all randomness comes from the stream argument.
using Observer = std::function<RealVec(const BitVec& codeword, RandomStream& rng)>;

// QPSK over the given channel, soft-demapped with the same channel.
Observer awgn_observer(ChannelSpec ch);

struct TrialOutcome {
  int theta = 0;  // 0 -> m1 sent, 1 -> m2 sent
  bool upper_correct = false;
  bool lower_correct = false;
  bool coin_used = false;
  std::size_t survivors = 0;
};

/// One distinguishing trial. Draw order from `rng`: theta, the seed (only
/// under SeedPolicy::per_trial), r, the observation, then the fall-back coin.
///
/// The upper attacker outputs the message of the most likely list entry that
/// passes the CRC (when `crc_filter`) and hashes to m1 or m2. The lower
/// attacker additionally knows the transmitted codeword and keeps it only when
/// it is strictly more likely than that entry. With no surviving entry both
/// attackers answer with the same fair coin.
TrialOutcome run_trial(const DerSetup& s, const Observer& observe, RandomStream& rng);

struct DerBounds {
  double lower = 0.0;  // clamped to <= 0.5
  double upper = 0.0;
  double raw_lower = 0.0;
  double raw_upper = 0.0;
  double ci_lower = 0.0;  // 95 % normal-approximation half widths
  double ci_upper = 0.0;
  std::size_t trials = 0;
  std::size_t lower_errors = 0;
  std::size_t upper_errors = 0;
  std::size_t coin_flips = 0;
  std::size_t list_size = 0;

  double ci_halfwidth() const { return ci_lower > ci_upper ? ci_lower : ci_upper; }
};

double ci95(double p, std::size_t trials);

// Trial i draws from rng.substream(i); counts are summed, so the result does
// not depend on `threads`.
DerBounds estimate_der_bounds(const DerSetup& s, const Observer& observe, std::size_t trials,
                              const RandomStream& rng, unsigned threads = 1);

// `rate` is the optimal distinguisher, deciding on sum_r P(z | m_i, r).
// `codeword_rate` decides on the single most likely codeword instead; it is
// the decoder the list bounds bracket, and equals both bounds when the list is
// exhaustive.
struct OracleResult {
  double rate = 0.0;
  double ci = 0.0;
  std::size_t errors = 0;
  double codeword_rate = 0.0;
  double codeword_ci = 0.0;
  std::size_t codeword_errors = 0;
  std::size_t trials = 0;
};

inline constexpr std::size_t kOracleMaxRandomnessBits = 16;

/// Exact ML distinguisher by enumeration of all 2^(l-k) randomness values per
/// message. Uses the same per-trial draws as `estimate_der_bounds`, so both
/// see identical channel realizations for a given stream. Ties are broken by
/// fair coins drawn after the observation, message rule first.
OracleResult der_ml_oracle(const DerSetup& s, const Observer& observe, std::size_t trials, const RandomStream& rng,
                           unsigned threads = 1);

struct LkCase {
  std::size_t l = 0;
  std::size_t k = 0;
  BitVec m1, m2;
};

struct LkComparison {
  LkCase a, b;
  OracleResult ra, rb;
  double tolerance = 0.0;  // 3 sigma of the difference
  bool asserted = false;   // only equal l-k pairs carry a claim
  bool pass = true;
};

/// Runs the oracle on each case with an n-bit NR-constructed code (no CRC)
/// under per-trial seed refresh and compares the pairs.
std::vector<LkComparison> lk_dependence_check(std::size_t n, const std::vector<std::pair<LkCase, LkCase>>& pairs,
                                              const ChannelSpec& ch, std::size_t trials, const RandomStream& rng,
                                              unsigned threads = 1);

unsigned resolve_threads(unsigned requested);

}  // namespace plsnr
