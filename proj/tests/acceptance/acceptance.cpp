// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are fixed here; the process exits non-zero if any line fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plsnr/der.hpp"
#include "plsnr/harness/commands.hpp"
#include "plsnr/harness/config.hpp"
#include "plsnr/harness/presets.hpp"
#include "plsnr/nrframe.hpp"
#include "plsnr/rng.hpp"
#include "plsnr/scenario.hpp"
#include "plsnr/secrecy.hpp"

using namespace plsnr;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double limit_s;
  std::function<Verdict()> run;
};

double binom_var(double p, std::size_t n) { return p * (1.0 - p) / static_cast<double>(n); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("plsnr_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// --- criteria -------------------------------------------------------------

Verdict friis() {
  constexpr double kTol = 0.05;
  const std::vector<std::pair<std::string, double>> cases{{"1", 86.58}, {"2", 77.38}, {"3a", 79.57}};
  Verdict v{true, ""};
  for (const auto& [id, expect] : cases) {
    const double pl = friis_path_loss(27e9, find_preset(id).d_m);
    v.pass = v.pass && std::abs(pl - expect) <= kTol;
    v.detail += fmt::format("{}:{:.3f}/{:.2f} ", id, pl, expect);
  }
  return v;
}

Verdict secrecy_algebra() {
  const SecrecyParams p{1, 222};
  RandomStream rng(20260101);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const SecrecySeed s = draw_seed(p, rng);
    const BitVec m = BitVec::random(p.k, rng);
    if (secrecy_decode(secrecy_encode(m, draw_randomness(p, rng), s, p), s, p) != m) ++bad;
  }
  // Every seed splits {0,1}^l into 2^k disjoint cosets of size 2^(l-k), each
  // decoding to its own message.
  std::size_t coset_failures = 0, checked = 0;
  for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 8}, {1, 12}, {2, 12}, {4, 12}, {6, 12}, {11, 12}, {12, 12}}) {
    const SecrecyParams q{k, l};
    for (int rep = 0; rep < 3; ++rep) {
      const SecrecySeed s = draw_seed(q, rng);
      std::vector<int> owner(std::size_t{1} << l, -1);
      bool ok = true;
      for (std::uint64_t mi = 0; mi < (1ULL << k); ++mi) {
        BitVec m(k);
        for (std::size_t b = 0; b < k; ++b) m.set(b, (mi >> b) & 1U);
        for (std::uint64_t ri = 0; ri < (1ULL << (l - k)); ++ri) {
          BitVec r(l - k);
          for (std::size_t b = 0; b < l - k; ++b) r.set(b, (ri >> b) & 1U);
          const BitVec v = secrecy_encode(m, r, s, q);
          std::uint64_t idx = 0;
          for (std::size_t b = 0; b < l; ++b) idx |= std::uint64_t{v[b]} << b;
          if (owner[idx] != -1 || secrecy_decode(v, s, q) != m) ok = false;
          owner[idx] = static_cast<int>(mi);
        }
      }
      for (int o : owner) ok = ok && o >= 0;
      coset_failures += ok ? 0 : 1;
      ++checked;
    }
  }
  return {bad == 0 && coset_failures == 0,
          fmt::format("round-trip failures {}/10000, coset partitions {}/{} ok", bad, checked - coset_failures,
                      checked)};
}

Verdict bracketing() {
  constexpr std::size_t kTrials = 10000;
  constexpr std::size_t kCollapseTrials = 2000;
  const auto grid = range_grid(-20.0, 1.1, 1.0);  // 20 SNRs, DER ~0.46 down to ~0.05
  DerSetup s;
  s.pls = {1, 8};
  s.code = build_spec(16, 8, CrcSpec::none(), nr_reliability(16));
  s.m1 = BitVec::from_string("0");
  s.m2 = BitVec::from_string("1");
  s.crc_filter = false;
  RandomStream seed_rng = RandomStream(42).substream(99);
  s.seed = draw_seed(s.pls, seed_rng);
  const unsigned threads = resolve_threads(0);

  std::size_t settings = 0, violations = 0, collapse_bad = 0;
  double der_min = 1, der_max = 0;
  std::string worst;
  double worst_margin = 1e9;
  for (std::size_t L : {2u, 8u}) {
    s.list_size = L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Observer obs = awgn_observer(ChannelSpec::awgn_snr_db(grid[i]));
      const RandomStream rs = RandomStream(42).substream(L).substream(i);
      const DerBounds b = estimate_der_bounds(s, obs, kTrials, rs, threads);
      const OracleResult o = der_ml_oracle(s, obs, kTrials, rs, threads);
      const double p = o.codeword_rate;
      const double lo = b.raw_lower - 3 * std::sqrt(binom_var(b.raw_lower, kTrials) + binom_var(p, kTrials));
      const double hi = b.raw_upper + 3 * std::sqrt(binom_var(b.raw_upper, kTrials) + binom_var(p, kTrials));
      ++settings;
      if (!(lo <= p && p <= hi)) ++violations;
      const double margin = std::min(p - lo, hi - p);
      if (margin < worst_margin) {
        worst_margin = margin;
        worst = fmt::format("L={} snr={:.1f} [{:.4f} {:.4f} {:.4f}]", L, grid[i], b.raw_lower, p, b.raw_upper);
      }
      der_min = std::min(der_min, p);
      der_max = std::max(der_max, p);
    }
  }
  // Exhaustive list: 2^8 paths cover every codeword.
  DerSetup ex = s;
  ex.list_size = 256;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Observer obs = awgn_observer(ChannelSpec::awgn_snr_db(grid[i]));
    const RandomStream rs = RandomStream(43).substream(i);
    for (std::size_t t = 0; t < kCollapseTrials; ++t) {
      RandomStream r = rs.substream(t);
      const TrialOutcome out = run_trial(ex, obs, r);
      if (out.upper_correct != out.lower_correct) ++collapse_bad;
    }
  }
  return {settings >= 20 && violations == 0 && collapse_bad == 0,
          fmt::format("{} settings, {} violations, codeword-ML DER {:.3f}..{:.3f}, tightest {}, collapse "
                      "mismatches {}/{}",
                      settings, violations, der_min, der_max, worst, collapse_bad, grid.size() * kCollapseTrials)};
}

DerSetup pbch_setup(std::size_t list) {
  DerSetup s;
  s.pls = {1, 222};
  s.code = build_spec(256, 222, CrcSpec::crc11(), nr_reliability(256));
  s.m1 = BitVec::from_string("0");
  s.m2 = BitVec::from_string("1");
  RandomStream r = RandomStream(7).substream(0);
  s.seed = draw_seed(s.pls, r);
  s.list_size = list;
  return s;
}

Verdict preset_limits() {
  constexpr std::size_t kTrials = 1000;
  const unsigned threads = resolve_threads(0);
  const DerSetup s = pbch_setup(8);
  const RandomStream base = RandomStream(7).substream(1);

  const DerBounds low = estimate_der_bounds(s, awgn_observer(ChannelSpec::awgn_snr_db(-10.0)), kTrials,
                                            base.substream(0), threads);
  const bool sat = std::abs(low.raw_lower - 0.5) <= low.ci_lower && std::abs(low.raw_upper - 0.5) <= low.ci_upper;

  const DerBounds clean = estimate_der_bounds(s, awgn_observer(ChannelSpec{}), kTrials, base.substream(1), threads);
  const bool zero = clean.lower <= 0.01;

  const std::vector<double> grid{3, 4, 5, 6, 7};
  std::vector<DerBounds> ub;
  for (std::size_t i = 0; i < grid.size(); ++i)
    ub.push_back(estimate_der_bounds(s, awgn_observer(ChannelSpec::awgn_snr_db(grid[i])), kTrials,
                                     base.substream(2 + i), threads));
  bool mono = true;
  std::string trace;
  for (std::size_t i = 0; i < ub.size(); ++i) {
    trace += fmt::format("{:.3f}{}", ub[i].upper, i + 1 < ub.size() ? "," : "");
    if (i && ub[i].upper > ub[i - 1].upper + ub[i].ci_upper + ub[i - 1].ci_upper) mono = false;
  }
  return {sat && zero && mono,
          fmt::format("-10 dB: lower {:.3f} upper {:.3f} (ci {:.3f}); noiseless lower {:.3f}; upper over 3..7 dB: {}",
                      low.lower, low.upper, low.ci_halfwidth(), clean.lower, trace)};
}

Verdict list_tightening() {
  constexpr std::size_t kTrials = 1000;
  constexpr double kSnr = 5.0;
  const unsigned threads = resolve_threads(0);
  const RandomStream rs = RandomStream(7).substream(2);
  const Observer obs = awgn_observer(ChannelSpec::awgn_snr_db(kSnr));
  const DerBounds b2 = estimate_der_bounds(pbch_setup(2), obs, kTrials, rs, threads);
  const DerBounds b16 = estimate_der_bounds(pbch_setup(16), obs, kTrials, rs, threads);
  const double g2 = b2.upper - b2.lower, g16 = b16.upper - b16.lower;
  const double ci = std::max(b2.ci_halfwidth(), b16.ci_halfwidth());
  return {g16 <= g2 + 2 * ci,
          fmt::format("{} dB: L=2 [{:.3f}, {:.3f}] gap {:.3f}; L=16 [{:.3f}, {:.3f}] gap {:.3f}; 2 CI {:.3f}", kSnr,
                      b2.lower, b2.upper, g2, b16.lower, b16.upper, g16, 2 * ci)};
}

Verdict lk_sufficiency() {
  constexpr std::size_t kTrials = 10000;
  const std::vector<std::pair<LkCase, LkCase>> pairs{
      {{8, 1, BitVec::from_string("0"), BitVec::from_string("1")},
       {9, 2, BitVec::from_string("00"), BitVec::from_string("01")}},
      {{8, 1, BitVec::from_string("0"), BitVec::from_string("1")},
       {9, 2, BitVec::from_string("10"), BitVec::from_string("01")}},
  };
  bool pass = true;
  std::string detail;
  std::uint64_t idx = 0;
  for (double snr : {-4.0, 0.0, 3.0}) {
    const auto res =
        lk_dependence_check(16, pairs, ChannelSpec::awgn_snr_db(snr), kTrials, RandomStream(11).substream(idx++),
                            resolve_threads(0));
    for (const auto& r : res) {
      pass = pass && r.asserted && r.pass;
      detail += fmt::format("{:.0f}dB {:.4f}/{:.4f}(tol {:.4f}) ", snr, r.ra.rate, r.rb.rate, r.tolerance);
    }
  }
  return {pass, detail};
}

Verdict frame_integrity() {
  std::string detail;
  bool pass = kPbchCodewords * kPbchCodewordLen + kPbchPadding == 864 && kPbchBits == 864;
  detail += fmt::format("field {}+{}={}; ", kPbchCodewords * kPbchCodewordLen, kPbchPadding, kPbchBits);

  RandomStream r(31);
  std::array<BitVec, 3> cws{BitVec::random(256, r), BitVec::random(256, r), BitVec::random(256, r)};
  const SsbGrid g = build_ssb(pack_pbch(cws, 17, r), {}, 17, r);
  const GridCensus c = g.census();
  pass = pass && c.pbch == 432 && c.dmrs == 144 && c.pss + c.sss == 254;
  detail += fmt::format("census data {} dmrs {} sync {}; ", c.pbch, c.dmrs, c.pss + c.sss);

  ExperimentConfig cfg = parse_config("seed: 32\nroundtrip: {blocks: 100, snr_db: .inf, lead: 1234}\n");
  cfg.out_dir = scratch("roundtrip").string();
  const CommandOutput rt = cmd_ssb_roundtrip(cfg);
  const std::size_t errs = rt.report["block_errors"].get<std::size_t>();
  const std::size_t sync = rt.report["sync_failures"].get<std::size_t>() +
                           rt.report["sync_offset_errors"].get<std::size_t>();
  pass = pass && errs == 0 && sync == 0;
  detail += fmt::format("noiseless loopback {} blocks, {} errors, {} sync misses; ", 100, errs, sync);
  fs::remove_all(cfg.out_dir);

  // Estimator against a known 10 dB PBCH SNR over N = 500 symbol observations.
  LoopbackConfig lc;
  lc.genie_sync = true;
  FrameLink link;
  link.noise_variance = 0.1;
  std::vector<SsbGrid> tx;
  std::vector<ResourceGrid> rx;
  for (int i = 0; i < 250; ++i) {
    for (auto& w : cws) w = BitVec::random(256, r);
    LoopbackResult lb = frame_loopback(cws, lc, link, r);
    tx.push_back(std::move(lb.tx));
    rx.push_back(std::move(lb.rx_grid));
  }
  const SnrRecord rec = pbch_snr(tx, rx);
  const double est = rec.aggregate_db();
  pass = pass && rec.symbols == 500 && std::abs(est - 10.0) <= 0.2;
  detail += fmt::format("snr estimate {:.3f} dB vs 10 dB at N={}", est, rec.symbols);
  return {pass, detail};
}

Verdict scenario_model() {
  const ArraySpec a;
  const LinkBudget b;
  bool pass = std::abs(array_gain(a, 0.0, 0.0) - a.peak_gain_db) < 1e-9;
  // boresight Eve gets the measured gain exactly; off-axis Eve gets it minus scan loss
  for (const auto& p : builtin_presets()) {
    const double g = effective_tx_gain(p, b, p.theta_eve_deg);
    const double scan = std::pow(10.0, (array_gain(a, p.theta_eve_deg, p.theta_eve_deg) - a.peak_gain_db) / 10.0);
    const double fl = p.diffuse_k_db ? std::pow(10.0, -*p.diffuse_k_db / 10.0) : 0.0;
    const double want = b.g_tx_db + 10.0 * std::log10((scan + fl) / (1.0 + fl));
    pass = pass && std::abs(g - want) < 1e-9;
    if (p.theta_eve_deg == 0.0) pass = pass && std::abs(g - b.g_tx_db) < 1e-9;
  }
  std::string detail = fmt::format("boresight {:.6f} dB; ", array_gain(a, 0.0, 0.0));

  double nulls[2];
  for (int side = 0; side < 2; ++side) {
    const double sgn = side ? -1.0 : 1.0;
    double best = 0, best_g = 1e300;
    for (double t = 15.0; t <= 60.0; t += 0.001) {
      const double g = array_factor_power(a, 0.0, sgn * t);
      if (g < best_g) {
        best_g = g;
        best = sgn * t;
      }
    }
    nulls[side] = best;
    pass = pass && std::abs(std::abs(best) - 33.7) <= 0.5;
  }
  detail += fmt::format("nulls {:+.3f} / {:+.3f} deg; ", nulls[0], nulls[1]);

  const ScenarioPreset& p1 = find_preset("1");
  const double peak = eve_snr(p1, b, 0.0, 10.0);
  double worst = peak;
  for (double t = 25.0; t <= 40.0; t += 0.1) worst = std::min(worst, eve_snr(p1, b, t, 10.0));
  const double dip = peak - worst;
  pass = pass && std::abs(dip - 10.0) <= 3.0;
  detail += fmt::format("preset 1 at +10 dB PBCH: boresight {:.2f} dB, null dip {:.2f} dB", peak, dip);
  return {pass, detail};
}

Verdict determinism() {
  const char* yaml = R"(
name: determinism
seed: 2024
der: {trials: 200}
scenario:
  preset: "1"
  angle_deg: [-33.7, -15, 0, 15, 33.7]
  pbch_db: [-5, 5, 9]
)";
  std::vector<std::string> csvs;
  std::vector<double> secs;
  for (unsigned t : {1u, 8u}) {
    ExperimentConfig c = parse_config(yaml);
    c.threads = t;
    c.out_dir = scratch(fmt::format("det{}", t)).string();
    const auto t0 = std::chrono::steady_clock::now();
    (void)cmd_der_sweep(c);
    secs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    csvs.push_back(slurp(fs::path(c.out_dir) / "results.csv"));
    fs::remove_all(c.out_dir);
  }
  std::size_t rows = 0;
  for (char ch : csvs[0]) rows += ch == '\n';
  return {csvs[0] == csvs[1] && rows == 16,
          fmt::format("{} rows, {} bytes, threads 1 vs 8 identical: {}; 15-point sweep {:.1f} s / {:.1f} s", rows - 1,
                      csvs[0].size(), csvs[0] == csvs[1] ? "yes" : "no", secs[0], secs[1])};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"friis_path_loss", 1.0, friis},
      {"secrecy_algebra", 10.0, secrecy_algebra},
      {"bound_bracketing", 600.0, bracketing},
      {"preset_limits", 900.0, preset_limits},
      {"list_size_tightening", 900.0, list_tightening},
      {"lk_sufficiency", 600.0, lk_sufficiency},
      {"frame_integrity", 600.0, frame_integrity},
      {"scenario_model", 60.0, scenario_model},
      {"determinism", 600.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_s;
    const bool ok = v.pass && in_time;
    failed += ok ? 0 : 1;
    std::printf("%s %-22s %6.2fs/%-5.0fs %s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), s, c.limit_s,
                v.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
