// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace plsnr {

using Philox4x64Counter = std::array<std::uint64_t, 4>;
using Philox4x64Key = std::array<std::uint64_t, 2>;

// Philox4x64-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3").
Philox4x64Counter philox4x64(Philox4x64Counter ctr, Philox4x64Key key);

/// Counter-based random stream.
///
/// A stream is identified by a 128-bit key: the master seed and a hash of the
/// substream path. `substream(i)` derives an independent child whose key is
/// `(seed, splitmix64(path ^ splitmix64(i + 1)))`, so the sequence seen by a
/// trial depends only on (master seed, point index, trial index) and never on
/// scheduling. Within a stream the counter walks blocks 0, 1, 2, ...
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : key_{seed, 0x6a09e667f3bcc909ULL} {}

  RandomStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  // Uniform integer on [0, n); n > 0.
  std::uint64_t uniform_int(std::uint64_t n);
  bool bit();
  double normal();
  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance);

  const Philox4x64Key& key() const { return key_; }

 private:
  RandomStream(Philox4x64Key key) : key_(key) {}
  void refill();

  Philox4x64Key key_;
  std::uint64_t block_ = 0;
  Philox4x64Counter buf_{};
  int buf_pos_ = 4;
  std::uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace plsnr
