// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/polar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "plsnr/error.hpp"

namespace plsnr {

namespace detail {
std::span<const std::uint16_t> nr_polar_sequence();
}

PolarConstruction construction_from_name(std::string_view name) {
  if (name == "nr") return PolarConstruction::nr;
  if (name == "bhattacharyya") return PolarConstruction::bhattacharyya;
  fail(Errc::invalid_argument, "unknown polar construction '" + std::string(name) + "' (expected nr|bhattacharyya)");
}

std::vector<std::size_t> nr_reliability(std::size_t n) {
  require(n >= 1 && std::has_single_bit(n), "polar: n must be a power of two");
  require(n <= 1024, "polar: the NR sequence covers n <= 1024 only");
  std::vector<std::size_t> out;
  out.reserve(n);
  for (auto q : detail::nr_polar_sequence())
    if (q < n) out.push_back(q);
  return out;
}

std::vector<std::size_t> bhattacharyya_reliability(std::size_t n, double design_snr_db) {
  require(n >= 1 && std::has_single_bit(n), "polar: n must be a power of two");
  const int m = std::countr_zero(n);
  const double z0 = std::exp(-std::pow(10.0, design_snr_db / 10.0));
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double zi = z0;
    // MSB of i picks the outermost split: 0 -> degraded half, 1 -> upgraded.
    for (int b = m - 1; b >= 0; --b) zi = ((i >> b) & 1U) ? zi * zi : 2.0 * zi - zi * zi;
    z[i] = zi;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Ascending reliability = descending Bhattacharyya parameter.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] > z[b]; });
  return order;
}

PolarCodeSpec build_spec(std::size_t n, std::size_t payload_len, const CrcSpec& crc,
                         std::span<const std::size_t> reliability) {
  require(n >= 1 && std::has_single_bit(n), "polar: n must be a power of two");
  require(payload_len + crc.width <= n, "polar: payload plus CRC exceeds code length");
  require(payload_len >= 1, "polar: payload must be non-empty");
  require(reliability.size() == n, "polar: reliability order must list every index once");
  std::vector<bool> seen(n, false);
  for (auto q : reliability) {
    require(q < n && !seen[q], "polar: reliability order must be a permutation of [0, n)");
    seen[q] = true;
  }
  PolarCodeSpec spec;
  spec.n = n;
  spec.k_info = payload_len + crc.width;
  spec.crc = crc;
  spec.info_set.assign(reliability.end() - static_cast<std::ptrdiff_t>(spec.k_info), reliability.end());
  std::sort(spec.info_set.begin(), spec.info_set.end());
  return spec;
}

BitVec polar_transform(BitVec u) {
  const std::size_t n = u.size();
  require(std::has_single_bit(n), "polar_transform: length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j)
        if (u[j + h]) u.flip(j);
  return u;
}

BitVec polar_encode(const BitVec& payload, const PolarCodeSpec& spec) {
  require(payload.size() == spec.payload_len(), "polar_encode: payload length does not match the code");
  const BitVec v = spec.crc.width > 0 ? crc_append(payload, spec.crc) : payload;
  BitVec u(spec.n);
  for (std::size_t i = 0; i < spec.k_info; ++i) u.set(spec.info_set[i], v[i]);
  return polar_transform(std::move(u));
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double boxplus(double a, double b) {
  const double s = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
  return s * std::min(std::abs(a), std::abs(b)) + std::log1p(std::exp(-std::abs(a + b))) -
         std::log1p(std::exp(-std::abs(a - b)));
}

double codeword_metric(std::span<const double> llr, const BitVec& codeword) {
  require(llr.size() == codeword.size(), "codeword_metric: length mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < llr.size(); ++j) m += softplus(codeword[j] ? llr[j] : -llr[j]);
  return m;
}

namespace {

// Per-path decoder state. LLRs and partial sums are stored per tree depth:
// depth d (node size n >> d) lives at offset 2n - 2(n >> d).
struct Path {
  std::vector<double> llr;
  std::vector<std::uint8_t> bits;
  std::vector<std::uint8_t> u;
  double metric = 0.0;
};

class ListDecoder {
 public:
  ListDecoder(const PolarCodeSpec& spec, std::size_t list_size) : spec_(spec), list_size_(list_size) {
    n_ = spec.n;
    depth_ = std::countr_zero(n_);
    frozen_.assign(n_, 1);
    for (auto i : spec.info_set) frozen_[i] = 0;
  }

  std::vector<Path> run(std::span<const double> llr) {
    Path root;
    root.llr.assign(2 * n_ - 1, 0.0);
    root.bits.assign(2 * n_ - 1, 0);
    root.u.assign(n_, 0);
    std::copy(llr.begin(), llr.end(), root.llr.begin());
    paths_.clear();
    paths_.push_back(std::move(root));
    decode_node(0, 0);
    return std::move(paths_);
  }

 private:
  std::size_t off(int d) const { return 2 * n_ - 2 * (n_ >> d); }

  void decode_node(int d, std::size_t leaf) {
    const std::size_t size = n_ >> d;
    if (size == 1) {
      decide(leaf);
      return;
    }
    const std::size_t half = size / 2;
    const std::size_t o = off(d), oc = off(d + 1);
    for (auto& p : paths_)
      for (std::size_t j = 0; j < half; ++j) p.llr[oc + j] = boxplus(p.llr[o + j], p.llr[o + half + j]);
    decode_node(d + 1, leaf);
    for (auto& p : paths_)
      for (std::size_t j = 0; j < half; ++j) {
        p.bits[o + j] = p.bits[oc + j];
        const double sign = p.bits[o + j] ? -1.0 : 1.0;
        p.llr[oc + j] = p.llr[o + half + j] + sign * p.llr[o + j];
      }
    decode_node(d + 1, leaf + half);
    for (auto& p : paths_)
      for (std::size_t j = 0; j < half; ++j) {
        p.bits[o + j] ^= p.bits[oc + j];
        p.bits[o + half + j] = p.bits[oc + j];
      }
  }

  void decide(std::size_t i) {
    const std::size_t leaf_off = off(depth_);
    if (frozen_[i]) {
      for (auto& p : paths_) {
        p.metric += softplus(-p.llr[leaf_off]);
        p.bits[leaf_off] = 0;
        p.u[i] = 0;
      }
      return;
    }
    const std::size_t count = paths_.size();
    cand_metric_.resize(2 * count);
    for (std::size_t p = 0; p < count; ++p) {
      const double lam = paths_[p].llr[leaf_off];
      cand_metric_[2 * p] = paths_[p].metric + softplus(-lam);
      cand_metric_[2 * p + 1] = paths_[p].metric + softplus(lam);
    }
    keep_.assign(2 * count, 0);
    if (2 * count <= list_size_) {
      std::fill(keep_.begin(), keep_.end(), 1);
    } else {
      order_.resize(2 * count);
      std::iota(order_.begin(), order_.end(), 0);
      std::partial_sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(list_size_), order_.end(),
                        [&](std::size_t a, std::size_t b) {
                          if (cand_metric_[a] != cand_metric_[b]) return cand_metric_[a] < cand_metric_[b];
                          return a < b;
                        });
      for (std::size_t r = 0; r < list_size_; ++r) keep_[order_[r]] = 1;
    }
    std::vector<Path> next;
    next.reserve(std::min(2 * count, list_size_));
    for (std::size_t p = 0; p < count; ++p) {
      const bool k0 = keep_[2 * p], k1 = keep_[2 * p + 1];
      if (k0 && k1) {
        Path clone = paths_[p];
        set_bit(clone, i, 0, cand_metric_[2 * p]);
        next.push_back(std::move(clone));
        set_bit(paths_[p], i, 1, cand_metric_[2 * p + 1]);
        next.push_back(std::move(paths_[p]));
      } else if (k0 || k1) {
        const std::uint8_t b = k1 ? 1 : 0;
        set_bit(paths_[p], i, b, cand_metric_[2 * p + b]);
        next.push_back(std::move(paths_[p]));
      }
    }
    paths_ = std::move(next);
  }

  void set_bit(Path& p, std::size_t i, std::uint8_t b, double metric) const {
    p.bits[off(depth_)] = b;
    p.u[i] = b;
    p.metric = metric;
  }

  const PolarCodeSpec& spec_;
  std::size_t list_size_;
  std::size_t n_ = 0;
  int depth_ = 0;
  std::vector<std::uint8_t> frozen_;
  std::vector<Path> paths_;
  std::vector<double> cand_metric_;
  std::vector<std::uint8_t> keep_;
  std::vector<std::size_t> order_;
};

}  // namespace

DecodeList scl_decode(std::span<const double> llr, const PolarCodeSpec& spec, std::size_t list_size) {
  require(list_size >= 1, "scl_decode: list size must be >= 1");
  require(llr.size() == spec.n, "scl_decode: LLR count must equal code length");
  for (double v : llr) require(std::isfinite(v), "scl_decode: LLRs must be finite");

  ListDecoder dec(spec, list_size);
  std::vector<Path> paths = dec.run(llr);

  std::vector<std::size_t> order(paths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return paths[a].metric < paths[b].metric; });

  DecodeList out;
  out.list_size = list_size;
  out.entries.reserve(paths.size());
  for (auto idx : order) {
    const Path& p = paths[idx];
    BitVec v(spec.k_info);
    for (std::size_t i = 0; i < spec.k_info; ++i) v.set(i, p.u[spec.info_set[i]] != 0);
    DecodeEntry e;
    e.crc_ok = crc_check(v, spec.crc);
    e.payload = v.slice(0, spec.payload_len());
    e.path_metric = p.metric;
    e.codeword = BitVec(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) e.codeword.set(j, p.bits[j] != 0);
    out.entries.push_back(std::move(e));
  }
  return out;
}

DecodedPayload decode_payload(const DecodeList& list) {
  if (list.entries.empty()) fail(Errc::decode_failure, "decode_payload: empty decoder list");
  for (const auto& e : list.entries)
    if (e.crc_ok) return {e.payload, true};
  return {list.entries.front().payload, false};
}

}  // namespace plsnr
