// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/nrframe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "plsnr/error.hpp"
#include "plsnr/rng.hpp"

namespace plsnr {

namespace {

constexpr std::size_t kSyncLo = 56;
constexpr std::size_t kSyncHi = 182;  // inclusive, 127 carriers
constexpr std::size_t kSss2Lo = 48;   // symbol 2 PBCH gap [48, 192)
constexpr std::size_t kSss2Hi = 192;

double amp(double db) { return std::pow(10.0, db / 20.0); }

// x(i + 7) = sum of the tapped x(i + t) for t in taps, over GF(2).
std::vector<int> mseq127(std::array<int, 7> init, std::initializer_list<int> taps) {
  std::vector<int> x(kSyncSeqLen);
  std::copy(init.begin(), init.end(), x.begin());
  for (std::size_t i = 0; i + 7 < kSyncSeqLen; ++i) {
    int v = 0;
    for (int t : taps) v ^= x[i + static_cast<std::size_t>(t)];
    x[i + 7] = v;
  }
  return x;
}

ReClass layout_dmrs_or_pbch(std::size_t k, int cell_id) {
  return static_cast<int>(k % 4) == cell_id % 4 ? ReClass::dmrs : ReClass::pbch;
}

}  // namespace

std::vector<int> pss_sequence(int n_id2) {
  require(n_id2 >= 0 && n_id2 <= 2, "pss: N_ID2 must be 0, 1 or 2");
  const auto x = mseq127({0, 1, 1, 0, 1, 1, 1}, {4, 0});
  std::vector<int> d(kSyncSeqLen);
  for (std::size_t n = 0; n < kSyncSeqLen; ++n) d[n] = 1 - 2 * x[(n + 43 * static_cast<std::size_t>(n_id2)) % 127];
  return d;
}

std::vector<int> sss_sequence(int n_id1, int n_id2) {
  require(n_id1 >= 0 && n_id1 < 336, "sss: N_ID1 must be in [0, 336)");
  require(n_id2 >= 0 && n_id2 <= 2, "sss: N_ID2 must be 0, 1 or 2");
  const auto x0 = mseq127({1, 0, 0, 0, 0, 0, 0}, {4, 0});
  const auto x1 = mseq127({1, 0, 0, 0, 0, 0, 0}, {1, 0});
  const std::size_t m0 = 15 * static_cast<std::size_t>(n_id1 / 112) + 5 * static_cast<std::size_t>(n_id2);
  const std::size_t m1 = static_cast<std::size_t>(n_id1 % 112);
  std::vector<int> d(kSyncSeqLen);
  for (std::size_t n = 0; n < kSyncSeqLen; ++n) d[n] = (1 - 2 * x0[(n + m0) % 127]) * (1 - 2 * x1[(n + m1) % 127]);
  return d;
}

BitVec gold_sequence(std::uint32_t c_init, std::size_t len) {
  constexpr std::size_t nc = 1600;
  const std::size_t total = nc + len + 31;
  std::vector<std::uint8_t> x1(total, 0), x2(total, 0);
  x1[0] = 1;
  for (std::size_t i = 0; i < 31; ++i) x2[i] = (c_init >> i) & 1U;
  for (std::size_t n = 0; n + 31 < total; ++n) {
    x1[n + 31] = x1[n + 3] ^ x1[n];
    x2[n + 31] = x2[n + 3] ^ x2[n + 2] ^ x2[n + 1] ^ x2[n];
  }
  BitVec c(len);
  for (std::size_t n = 0; n < len; ++n) c.set(n, (x1[n + nc] ^ x2[n + nc]) != 0);
  return c;
}

IqVec pbch_dmrs(int cell_id, int issb) {
  require(cell_id >= 0 && cell_id < 1008, "dmrs: cell id must be in [0, 1008)");
  require(issb >= 0 && issb < 8, "dmrs: SSB index must be in [0, 8)");
  const auto i1 = static_cast<std::uint32_t>(issb + 1);
  const auto id = static_cast<std::uint32_t>(cell_id);
  const std::uint32_t c_init = (1U << 11) * i1 * (id / 4 + 1) + (1U << 6) * i1 + id % 4;
  const BitVec c = gold_sequence(c_init, 2 * kPbchDmrsRes);
  IqVec r(kPbchDmrsRes);
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::size_t m = 0; m < kPbchDmrsRes; ++m) r[m] = {s * (c[2 * m] ? -1.0 : 1.0), s * (c[2 * m + 1] ? -1.0 : 1.0)};
  return r;
}

BitVec pack_pbch(std::span<const BitVec> codewords, int cell_id, RandomStream& rng, bool scramble) {
  require(codewords.size() == kPbchCodewords, "pack_pbch: exactly three codewords are required");
  BitVec field(kPbchBits);
  std::size_t pos = 0;
  for (const auto& cw : codewords) {
    require(cw.size() == kPbchCodewordLen, "pack_pbch: codewords must have 256 bits");
    for (std::size_t j = 0; j < cw.size(); ++j) field.set(pos++, cw[j]);
  }
  for (; pos < kPbchBits; ++pos) field.set(pos, rng.bit());
  if (scramble) field ^= gold_sequence(static_cast<std::uint32_t>(cell_id), kPbchBits);
  return field;
}

std::array<BitVec, kPbchCodewords> unpack_pbch(const BitVec& field, int cell_id, bool scramble) {
  require(field.size() == kPbchBits, "unpack_pbch: field must have 864 bits");
  const BitVec plain = scramble ? field ^ gold_sequence(static_cast<std::uint32_t>(cell_id), kPbchBits) : field;
  std::array<BitVec, kPbchCodewords> out;
  for (std::size_t c = 0; c < kPbchCodewords; ++c) out[c] = plain.slice(c * kPbchCodewordLen, kPbchCodewordLen);
  return out;
}

std::array<RealVec, kPbchCodewords> unpack_pbch_llrs(std::span<const double> field_llr, int cell_id, bool scramble) {
  require(field_llr.size() == kPbchBits, "unpack_pbch_llrs: field must have 864 LLRs");
  const BitVec c = scramble ? gold_sequence(static_cast<std::uint32_t>(cell_id), kPbchBits) : BitVec(kPbchBits);
  std::array<RealVec, kPbchCodewords> out;
  for (std::size_t w = 0; w < kPbchCodewords; ++w) {
    out[w].resize(kPbchCodewordLen);
    for (std::size_t j = 0; j < kPbchCodewordLen; ++j) {
      const std::size_t i = w * kPbchCodewordLen + j;
      out[w][j] = c[i] ? -field_llr[i] : field_llr[i];
    }
  }
  return out;
}

const char* re_class_name(ReClass c) {
  switch (c) {
    case ReClass::unused: return "unused";
    case ReClass::pss: return "pss";
    case ReClass::sss: return "sss";
    case ReClass::pbch: return "pbch";
    case ReClass::dmrs: return "dmrs";
    case ReClass::dummy: return "dummy";
  }
  return "?";
}

void PowerProfile::validate() const {
  for (double v : {p_pbch_db, p_pss_db, p_sss_db, p_dummy_db})
    require(std::isfinite(v), "power profile: offsets must be finite");
}

double PowerProfile::offset_db(ReClass c) const {
  switch (c) {
    case ReClass::pss: return p_pss_db;
    case ReClass::sss: return p_sss_db;
    case ReClass::pbch:
    case ReClass::dmrs: return p_pbch_db;
    case ReClass::dummy: return p_dummy_db;
    case ReClass::unused: break;
  }
  return 0.0;
}

ReClass ssb_layout(std::size_t sym, std::size_t k, int cell_id) {
  require(sym < kSsbSymbols && k < kSsbCarriers, "ssb_layout: position outside the SSB");
  switch (sym) {
    case 0: return (k >= kSyncLo && k <= kSyncHi) ? ReClass::pss : ReClass::unused;
    case 2:
      if (k >= kSyncLo && k <= kSyncHi) return ReClass::sss;
      if (k < kSss2Lo || k >= kSss2Hi) return layout_dmrs_or_pbch(k, cell_id);
      return ReClass::unused;
    default: return layout_dmrs_or_pbch(k, cell_id);
  }
}

GridCensus SsbGrid::census() const {
  GridCensus c;
  for (auto v : cls) {
    switch (v) {
      case ReClass::pss: ++c.pss; break;
      case ReClass::sss: ++c.sss; break;
      case ReClass::pbch: ++c.pbch; break;
      case ReClass::dmrs: ++c.dmrs; break;
      case ReClass::unused: ++c.unused; break;
      case ReClass::dummy: ++c.dummy; break;
    }
  }
  return c;
}

double SsbGrid::expected_power(const PowerProfile& p) const {
  const GridCensus c = census();
  auto pw = [](double db) { return std::pow(10.0, db / 10.0); };
  return static_cast<double>(c.pss) * pw(p.p_pss_db) + static_cast<double>(c.sss) * pw(p.p_sss_db) +
         static_cast<double>(c.pbch + c.dmrs) * pw(p.p_pbch_db) + static_cast<double>(c.dummy) * pw(p.p_dummy_db);
}

void SsbGrid::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  os << "symbol,subcarrier,re,im,class\n";
  for (std::size_t s = 0; s < grid.symbols; ++s)
    for (std::size_t k = 0; k < grid.carriers; ++k) {
      const cplx v = grid.at(s, k);
      os << fmt::format("{},{},{:.17g},{:.17g},{}\n", s, k, v.real(), v.imag(), re_class_name(class_at(s, k)));
    }
}

SsbGrid build_ssb(const BitVec& pbch_bits, const PowerProfile& profile, int cell_id, RandomStream& rng,
                  const OfdmParams& ofdm) {
  require(pbch_bits.size() == kPbchBits, "build_ssb: PBCH field must have 864 bits");
  require(cell_id >= 0 && cell_id < 1008, "build_ssb: cell id must be in [0, 1008)");
  profile.validate();
  ofdm.validate();
  require(ofdm.symbols == kSsbSymbols && ofdm.occupied >= kSsbCarriers, "build_ssb: numerology cannot hold an SSB");

  SsbGrid g;
  g.cell_id = cell_id;
  g.ssb_offset = (ofdm.occupied - kSsbCarriers) / 2;
  g.grid = ResourceGrid(kSsbSymbols, ofdm.occupied);
  g.cls.assign(g.grid.re.size(), ReClass::dummy);
  g.offset_db.assign(g.grid.re.size(), profile.p_dummy_db);

  const auto pss = pss_sequence(cell_id % 3);
  const auto sss = sss_sequence(cell_id / 3, cell_id % 3);
  const IqVec data = qpsk_mod(pbch_bits);
  const IqVec dmrs = pbch_dmrs(cell_id);
  const double a_pss = amp(profile.p_pss_db), a_sss = amp(profile.p_sss_db);
  const double a_pbch = amp(profile.p_pbch_db), a_dummy = amp(profile.p_dummy_db);
  std::size_t di = 0, ri = 0;
  const double s = 1.0 / std::numbers::sqrt2;

  for (std::size_t sym = 0; sym < kSsbSymbols; ++sym)
    for (std::size_t k = 0; k < ofdm.occupied; ++k) {
      const std::size_t idx = sym * ofdm.occupied + k;
      cplx& re = g.grid.re[idx];
      if (k < g.ssb_offset || k >= g.ssb_offset + kSsbCarriers) {
        const double i = rng.bit() ? -s : s;
        const double q = rng.bit() ? -s : s;
        re = a_dummy * cplx{i, q};
        continue;
      }
      const std::size_t kk = k - g.ssb_offset;
      const ReClass c = ssb_layout(sym, kk, cell_id);
      g.cls[idx] = c;
      g.offset_db[idx] = profile.offset_db(c);
      switch (c) {
        case ReClass::pss: re = a_pss * static_cast<double>(pss[kk - kSyncLo]); break;
        case ReClass::sss: re = a_sss * static_cast<double>(sss[kk - kSyncLo]); break;
        case ReClass::pbch: re = a_pbch * data[di++]; break;
        case ReClass::dmrs: re = a_pbch * dmrs[ri++]; break;
        case ReClass::unused:
        case ReClass::dummy: re = 0.0; break;
      }
    }
  return g;
}

SyncResult pss_sync(std::span<const cplx> iq, const OfdmParams& p, int cell_id, double threshold) {
  OfdmParams one = p;
  one.symbols = 1;
  one.validate();
  ResourceGrid g(1, p.occupied);
  const std::size_t off = (p.occupied - kSsbCarriers) / 2;
  const auto pss = pss_sequence(cell_id % 3);
  for (std::size_t n = 0; n < kSyncSeqLen; ++n) g.at(0, off + kSyncLo + n) = static_cast<double>(pss[n]);
  const IqVec tmpl = ofdm_mod(g, one);
  const std::size_t m = tmpl.size();
  if (iq.size() < m) fail(Errc::sync_failure, "pss_sync: capture shorter than one OFDM symbol");

  double tmpl_energy = 0.0;
  for (const auto& v : tmpl) tmpl_energy += std::norm(v);
  std::vector<double> cum(iq.size() + 1, 0.0);
  for (std::size_t i = 0; i < iq.size(); ++i) cum[i + 1] = cum[i] + std::norm(iq[i]);

  SyncResult best;
  for (std::size_t d = 0; d + m <= iq.size(); ++d) {
    const double e = cum[d + m] - cum[d];
    if (e <= 0.0) continue;
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < m; ++n) acc += iq[d + n] * std::conj(tmpl[n]);
    const double c = std::abs(acc) / std::sqrt(tmpl_energy * e);
    if (c > best.peak) {
      best.peak = c;
      best.offset = d;
    }
  }
  if (best.peak < threshold)
    fail(Errc::sync_failure, fmt::format("pss_sync: correlation peak {:.3f} below threshold {:.3f}", best.peak, threshold));

  cplx cp_acc{0.0, 0.0};
  for (std::size_t s = 0; s < p.symbols; ++s) {
    const std::size_t base = best.offset + s * p.symbol_len();
    if (base + p.symbol_len() > iq.size()) break;
    for (std::size_t n = 0; n < p.cp_len; ++n) cp_acc += std::conj(iq[base + n]) * iq[base + n + p.fft_size];
  }
  best.cfo_hz = std::arg(cp_acc) * p.sample_rate() / (2.0 * std::numbers::pi * static_cast<double>(p.fft_size));
  return best;
}

ChEstMode ch_est_mode_from_name(const std::string& name) {
  if (name == "ls_interp") return ChEstMode::ls_interp;
  if (name == "ls_smooth") return ChEstMode::ls_smooth;
  if (name == "genie") return ChEstMode::genie;
  fail(Errc::invalid_argument, "unknown channel estimator '" + name + "' (expected ls_interp|ls_smooth|genie)");
}

std::string ch_est_mode_name(ChEstMode m) {
  switch (m) {
    case ChEstMode::ls_interp: return "ls_interp";
    case ChEstMode::ls_smooth: return "ls_smooth";
    case ChEstMode::genie: return "genie";
  }
  return "?";
}

namespace {

struct Pilot {
  std::size_t sym, k;
  cplx h;
};

// Segment of contiguous PBCH carriers within one symbol.
bool same_segment(std::size_t sym, std::size_t a, std::size_t b) {
  if (sym != 2) return true;
  return (a < kSss2Lo) == (b < kSss2Lo);
}

cplx interp_at(const std::vector<Pilot>& pilots, std::size_t sym, std::size_t k) {
  const Pilot* lo = nullptr;
  const Pilot* hi = nullptr;
  for (const auto& p : pilots) {
    if (p.sym != sym || !same_segment(sym, p.k, k)) continue;
    if (p.k <= k && (!lo || p.k > lo->k)) lo = &p;
    if (p.k >= k && (!hi || p.k < hi->k)) hi = &p;
  }
  if (lo && hi) {
    if (lo->k == hi->k) return lo->h;
    const double w = static_cast<double>(k - lo->k) / static_cast<double>(hi->k - lo->k);
    return (1.0 - w) * lo->h + w * hi->h;
  }
  if (lo) return lo->h;
  if (hi) return hi->h;
  fail(Errc::estimation_failure, "rx_pbch: no DM-RS in segment");
}

}  // namespace

PbchRx rx_pbch_llrs(const ResourceGrid& obs, int cell_id, ChEstMode mode, double noise_variance,
                    std::span<const cplx> true_channel, std::size_t ssb_offset, bool scramble) {
  require(obs.symbols == kSsbSymbols && obs.carriers >= ssb_offset + kSsbCarriers,
          "rx_pbch: observation grid does not contain the SSB");
  if (mode == ChEstMode::genie)
    require(true_channel.size() == obs.carriers, "rx_pbch: genie estimation needs one gain per carrier");

  const IqVec ref = pbch_dmrs(cell_id);
  std::vector<Pilot> pilots;
  pilots.reserve(kPbchDmrsRes);
  double pilot_power = 0.0;
  std::size_t ri = 0;
  for (std::size_t sym = 1; sym < kSsbSymbols; ++sym)
    for (std::size_t k = 0; k < kSsbCarriers; ++k)
      if (ssb_layout(sym, k, cell_id) == ReClass::dmrs) {
        const cplx y = obs.at(sym, ssb_offset + k);
        pilot_power += std::norm(y);
        pilots.push_back({sym, k, y / ref[ri++]});
      }
  if (mode != ChEstMode::genie && pilot_power == 0.0)
    fail(Errc::estimation_failure, "rx_pbch: DM-RS carry no power");

  cplx flat{0.0, 0.0};
  if (mode == ChEstMode::ls_smooth) {
    for (const auto& p : pilots) flat += p.h;
    flat /= static_cast<double>(pilots.size());
  }

  if (noise_variance <= 0.0) {
    // Adjacent pilots of one segment see (nearly) the same channel, so their
    // LS difference carries twice the per-RE noise variance (|ref|^2 = 1).
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i + 1 < pilots.size(); ++i) {
      const auto& a = pilots[i];
      const auto& b = pilots[i + 1];
      if (a.sym != b.sym || !same_segment(a.sym, a.k, b.k)) continue;
      acc += std::norm(a.h - b.h);
      ++cnt;
    }
    noise_variance = cnt ? acc / (2.0 * static_cast<double>(cnt)) : 0.0;
  }

  PbchRx rx;
  rx.noise_variance = noise_variance;
  rx.equalized.reserve(kPbchDataRes);
  rx.channel.reserve(kPbchDataRes);
  IqVec y;
  y.reserve(kPbchDataRes);
  for (std::size_t sym = 1; sym < kSsbSymbols; ++sym)
    for (std::size_t k = 0; k < kSsbCarriers; ++k) {
      if (ssb_layout(sym, k, cell_id) != ReClass::pbch) continue;
      cplx h;
      switch (mode) {
        case ChEstMode::ls_interp: h = interp_at(pilots, sym, k); break;
        case ChEstMode::ls_smooth: h = flat; break;
        case ChEstMode::genie: h = true_channel[ssb_offset + k]; break;
      }
      const cplx v = obs.at(sym, ssb_offset + k);
      y.push_back(v);
      rx.channel.push_back(h);
      rx.equalized.push_back(h == cplx{} ? cplx{} : v / h);
    }

  ChannelSpec ch;
  ch.noise_variance = noise_variance;
  ch.profile = rx.channel;
  rx.field_llrs = qpsk_llr(y, ch);
  auto cw = unpack_pbch_llrs(rx.field_llrs, cell_id, scramble);
  rx.codeword_llrs = std::move(cw);
  // Report the field descrambled, matching the codeword view.
  if (scramble) {
    const BitVec c = gold_sequence(static_cast<std::uint32_t>(cell_id), kPbchBits);
    for (std::size_t i = 0; i < kPbchBits; ++i)
      if (c[i]) rx.field_llrs[i] = -rx.field_llrs[i];
  }
  return rx;
}

SnrRecord pbch_snr(std::span<const SsbGrid> tx, std::span<const ResourceGrid> rx) {
  require(!tx.empty() && tx.size() == rx.size(), "pbch_snr: need matching tx and rx records");
  std::vector<IqVec> t, r;
  t.reserve(2 * tx.size());
  r.reserve(2 * tx.size());
  for (std::size_t i = 0; i < tx.size(); ++i) {
    const std::size_t off = tx[i].ssb_offset;
    require(rx[i].symbols == kSsbSymbols && rx[i].carriers == tx[i].grid.carriers, "pbch_snr: grid shape mismatch");
    for (std::size_t sym : {std::size_t{1}, std::size_t{3}}) {
      const auto tr = tx[i].grid.row(sym).subspan(off, kSsbCarriers);
      const auto rr = rx[i].row(sym).subspan(off, kSsbCarriers);
      t.emplace_back(tr.begin(), tr.end());
      r.emplace_back(rr.begin(), rr.end());
    }
  }
  return estimate_snr(t, r);
}

LoopbackResult frame_loopback(std::span<const BitVec> codewords, const LoopbackConfig& cfg, const FrameLink& link,
                              RandomStream& rng) {
  const OfdmParams& p = cfg.ofdm;
  require(link.noise_variance >= 0.0 && std::isfinite(link.noise_variance), "loopback: noise variance must be >= 0");
  require(link.profile.empty() || link.profile.size() == p.occupied,
          "loopback: frequency profile must have one entry per occupied carrier");

  LoopbackResult out;
  const BitVec field = pack_pbch(codewords, cfg.cell_id, rng, cfg.scramble);
  out.tx = build_ssb(field, cfg.power, cfg.cell_id, rng, p);

  ResourceGrid faded = out.tx.grid;
  std::vector<cplx> eff(p.occupied);
  for (std::size_t k = 0; k < p.occupied; ++k) eff[k] = link.gain * (link.profile.empty() ? cplx{1.0} : link.profile[k]);
  for (std::size_t s = 0; s < faded.symbols; ++s)
    for (std::size_t k = 0; k < faded.carriers; ++k) faded.at(s, k) *= eff[k];
  const IqVec burst = ofdm_mod(faded, p);

  out.rx_iq.assign(link.lead + burst.size() + link.tail, cplx{});
  std::copy(burst.begin(), burst.end(), out.rx_iq.begin() + static_cast<std::ptrdiff_t>(link.lead));
  if (link.noise_variance > 0.0)
    for (auto& v : out.rx_iq) v += rng.complex_normal(link.noise_variance);

  if (cfg.genie_sync) {
    out.sync.offset = link.lead;
    out.sync.peak = 1.0;
  } else {
    out.sync = pss_sync(out.rx_iq, p, cfg.cell_id);
  }
  out.rx_grid = ofdm_demod(out.rx_iq, p, out.sync.offset);

  const double a = amp(cfg.power.p_pbch_db);
  for (auto& v : eff) v *= a;
  out.pbch = rx_pbch_llrs(out.rx_grid, cfg.cell_id, cfg.est, cfg.known_noise ? link.noise_variance : 0.0, eff,
                          out.tx.ssb_offset, cfg.scramble);
  return out;
}

}  // namespace plsnr
