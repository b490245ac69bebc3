// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/secrecy.hpp"

#include "plsnr/error.hpp"
#include "plsnr/rng.hpp"

namespace plsnr {

void SecrecyParams::validate() const {
  require(k >= 1, "secrecy: k must be >= 1");
  require(k <= l, "secrecy: k must not exceed l");
}

void SecrecySeed::validate(const SecrecyParams& p) const {
  require(a.size() + 1 == p.l, "secrecy: seed component a must have l-1 bits");
  require(t.size() == p.k, "secrecy: seed component t must have k bits");
}

std::string SecrecySeed::to_hex() const { return a.concat(t).to_hex(); }

SecrecySeed SecrecySeed::from_hex(const std::string& hex, const SecrecyParams& p) {
  p.validate();
  const std::size_t total = p.l - 1 + p.k;
  const BitVec all = BitVec::from_hex(hex, total);
  return SecrecySeed{all.slice(0, p.l - 1), all.slice(p.l - 1, p.k)};
}

BitVec secrecy_encode(const BitVec& m, const BitVec& r, const SecrecySeed& seed, const SecrecyParams& p) {
  p.validate();
  seed.validate(p);
  require(m.size() == p.k, "secrecy_encode: message must have k bits");
  require(r.size() == p.randomness_len(), "secrecy_encode: randomness must have l-k bits");
  const ToeplitzMatrix a(seed.a, p.k, p.randomness_len());
  BitVec tail = toeplitz_matvec(a, r);
  tail ^= m;
  tail ^= seed.t;
  return r.concat(tail);
}

BitVec secrecy_decode(const BitVec& v_hat, const SecrecySeed& seed, const SecrecyParams& p) {
  p.validate();
  seed.validate(p);
  require(v_hat.size() == p.l, "secrecy_decode: input must have l bits");
  const std::size_t lk = p.randomness_len();
  const ToeplitzMatrix a(seed.a, p.k, lk);
  BitVec m = toeplitz_matvec(a, v_hat.slice(0, lk));
  m ^= v_hat.slice(lk, p.k);
  m ^= seed.t;
  return m;
}

SecrecySeed draw_seed(const SecrecyParams& p, RandomStream& rng) {
  p.validate();
  BitVec a = BitVec::random(p.l - 1, rng);
  BitVec t = BitVec::random(p.k, rng);
  return SecrecySeed{std::move(a), std::move(t)};
}

BitVec draw_randomness(const SecrecyParams& p, RandomStream& rng) {
  p.validate();
  return BitVec::random(p.randomness_len(), rng);
}

}  // namespace plsnr
