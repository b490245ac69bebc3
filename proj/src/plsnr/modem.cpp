// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/modem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plsnr/error.hpp"
#include "plsnr/rng.hpp"

namespace plsnr {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

void ChannelSpec::validate() const {
  require(std::isfinite(noise_variance) && noise_variance >= 0.0, "channel: noise variance must be >= 0");
}

ChannelSpec ChannelSpec::awgn_snr_db(double snr_db) {
  ChannelSpec ch;
  ch.noise_variance = 1.0 / db_to_linear(snr_db);
  return ch;
}

IqVec qpsk_mod(const BitVec& bits) {
  require(bits.size() % 2 == 0, "qpsk_mod: bit count must be even");
  IqVec out(bits.size() / 2);
  for (std::size_t s = 0; s < out.size(); ++s)
    out[s] = {bits[2 * s] ? -kInvSqrt2 : kInvSqrt2, bits[2 * s + 1] ? -kInvSqrt2 : kInvSqrt2};
  return out;
}

IqVec transmit(std::span<const cplx> x, const ChannelSpec& ch, RandomStream& rng) {
  ch.validate();
  IqVec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = ch.gain_at(i) * x[i];
    if (ch.noise_variance > 0.0) y[i] += rng.complex_normal(ch.noise_variance);
  }
  return y;
}

RealVec qpsk_llr(std::span<const cplx> y, const ChannelSpec& ch) {
  ch.validate();
  RealVec llr(2 * y.size());
  const double scale = ch.noise_variance > 0.0 ? 2.0 * std::numbers::sqrt2 / ch.noise_variance
                                               : std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < y.size(); ++s) {
    const cplx mf = y[s] * std::conj(ch.gain_at(s));
    for (int c = 0; c < 2; ++c) {
      const double v = c == 0 ? mf.real() : mf.imag();
      double l = v == 0.0 ? 0.0 : scale * v;
      llr[2 * s + c] = std::clamp(l, -kLlrMax, kLlrMax);
    }
  }
  return llr;
}

double SnrRecord::aggregate_db() const {
  double p = 0.0, w = 0.0;
  for (std::size_t i = 0; i < signal_power.size(); ++i) {
    p += signal_power[i];
    w += noise_power[i];
  }
  if (w == 0.0) return std::numeric_limits<double>::infinity();
  return linear_to_db(p / w);
}

SnrRecord estimate_snr(std::span<const IqVec> tx_known, std::span<const IqVec> rx) {
  require(!tx_known.empty() && tx_known.size() == rx.size(), "estimate_snr: tx and rx must have the same symbol count");
  const std::size_t carriers = tx_known.front().size();
  for (std::size_t j = 0; j < tx_known.size(); ++j)
    require(tx_known[j].size() == carriers && rx[j].size() == carriers, "estimate_snr: ragged symbol rows");

  const std::size_t n = tx_known.size();
  SnrRecord rec;
  rec.symbols = n;
  rec.snr_linear.resize(carriers);
  rec.snr_db.resize(carriers);
  rec.infinite.assign(carriers, false);
  rec.signal_power.resize(carriers);
  rec.noise_power.resize(carriers);
  for (std::size_t i = 0; i < carriers; ++i) {
    cplx num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      num += rx[j][i] * std::conj(tx_known[j][i]);
      den += std::norm(tx_known[j][i]);
    }
    require(den > 0.0, "estimate_snr: carrier without reference power");
    const cplx g = num / den;
    double resid = 0.0;
    for (std::size_t j = 0; j < n; ++j) resid += std::norm(rx[j][i] - g * tx_known[j][i]);
    const double p = std::norm(g) * den / static_cast<double>(n);
    const double w = resid / static_cast<double>(n);
    rec.signal_power[i] = p;
    rec.noise_power[i] = w;
    if (w == 0.0) {
      rec.infinite[i] = true;
      rec.snr_linear[i] = std::numeric_limits<double>::infinity();
      rec.snr_db[i] = std::numeric_limits<double>::infinity();
    } else {
      rec.snr_linear[i] = p / w;
      rec.snr_db[i] = linear_to_db(p / w);
    }
  }
  return rec;
}

double evm(std::span<const cplx> rx, std::span<const cplx> ref) {
  require(rx.size() == ref.size(), "evm: length mismatch");
  double err = 0.0, pow = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    err += std::norm(rx[i] - ref[i]);
    pow += std::norm(ref[i]);
  }
  require(pow > 0.0, "evm: reference has zero power");
  return 100.0 * std::sqrt(err / pow);
}

}  // namespace plsnr
