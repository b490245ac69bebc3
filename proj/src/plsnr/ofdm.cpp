// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/ofdm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "plsnr/error.hpp"

namespace plsnr {

static_assert(sizeof(cplx) == sizeof(fftw_complex));

void OfdmParams::validate() const {
  require(fft_size >= 2 && (fft_size & (fft_size - 1)) == 0, "ofdm: fft_size must be a power of two");
  require(occupied >= 1 && occupied < fft_size, "ofdm: occupied carriers must fit below fft_size");
  require(cp_len < fft_size, "ofdm: cyclic prefix longer than the symbol");
  require(symbols >= 1, "ofdm: need at least one symbol");
  require(scs_hz > 0.0, "ofdm: subcarrier spacing must be positive");
}

namespace {

// Plans are created once per (size, direction) and executed through the
// new-array interface, which FFTW documents as thread-safe.
fftw_plan plan_for(std::size_t n, bool inverse) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, bool>, fftw_plan> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({n, inverse});
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                    reinterpret_cast<fftw_complex*>(b.data()), inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) fail(Errc::invalid_argument, "fftw could not plan a transform");
  cache.emplace(std::make_pair(n, inverse), plan);
  return plan;
}

std::size_t bin_of(std::size_t k, const OfdmParams& p) {
  const auto off = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(p.occupied / 2);
  const auto n = static_cast<std::ptrdiff_t>(p.fft_size);
  return static_cast<std::size_t>(((off % n) + n) % n);
}

}  // namespace

void dft(std::span<const cplx> in, std::span<cplx> out, bool inverse) {
  require(in.size() == out.size() && !in.empty(), "dft: size mismatch");
  std::vector<cplx> tmp(in.begin(), in.end());
  fftw_execute_dft(plan_for(in.size(), inverse), reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(in.size()));
  for (auto& v : out) v *= scale;
}

IqVec ofdm_mod(const ResourceGrid& grid, const OfdmParams& p) {
  p.validate();
  require(grid.symbols == p.symbols && grid.carriers == p.occupied, "ofdm_mod: grid shape does not match numerology");
  IqVec out(p.frame_len());
  std::vector<cplx> freq(p.fft_size), time(p.fft_size);
  for (std::size_t s = 0; s < p.symbols; ++s) {
    std::fill(freq.begin(), freq.end(), cplx{});
    for (std::size_t k = 0; k < p.occupied; ++k) freq[bin_of(k, p)] = grid.at(s, k);
    dft(freq, time, true);
    cplx* dst = out.data() + s * p.symbol_len();
    std::copy(time.end() - static_cast<std::ptrdiff_t>(p.cp_len), time.end(), dst);
    std::copy(time.begin(), time.end(), dst + p.cp_len);
  }
  return out;
}

ResourceGrid ofdm_demod(std::span<const cplx> iq, const OfdmParams& p, std::size_t start) {
  p.validate();
  if (start > iq.size() || iq.size() - start < p.frame_len())
    fail(Errc::invalid_argument, "ofdm_demod: not enough samples after the start index");
  ResourceGrid g(p.symbols, p.occupied);
  std::vector<cplx> freq(p.fft_size);
  for (std::size_t s = 0; s < p.symbols; ++s) {
    const auto body = iq.subspan(start + s * p.symbol_len() + p.cp_len, p.fft_size);
    dft(body, freq, false);
    for (std::size_t k = 0; k < p.occupied; ++k) g.at(s, k) = freq[bin_of(k, p)];
  }
  return g;
}

}  // namespace plsnr
