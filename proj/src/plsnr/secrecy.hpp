// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <string>

#include "plsnr/bitvec.hpp"

namespace plsnr {

class RandomStream;

// k message bits hashed out of l decoder-output bits.
struct SecrecyParams {
  std::size_t k = 1;
  std::size_t l = 222;

  std::size_t randomness_len() const { return l - k; }
  void validate() const;
};

// s = (a, t): a drives the Toeplitz matrix, t is the additive offset.
struct SecrecySeed {
  BitVec a;  // l - 1 bits
  BitVec t;  // k bits

  void validate(const SecrecyParams& p) const;
  // Hex of a || t; lengths travel alongside in the experiment record.
  std::string to_hex() const;
  static SecrecySeed from_hex(const std::string& hex, const SecrecyParams& p);
};

// v = [r, A_a r + m + t]
BitVec secrecy_encode(const BitVec& m, const BitVec& r, const SecrecySeed& seed, const SecrecyParams& p);
// m = A_a v[0, l-k) + v[l-k, l) + t
BitVec secrecy_decode(const BitVec& v_hat, const SecrecySeed& seed, const SecrecyParams& p);

SecrecySeed draw_seed(const SecrecyParams& p, RandomStream& rng);
BitVec draw_randomness(const SecrecyParams& p, RandomStream& rng);

}  // namespace plsnr
