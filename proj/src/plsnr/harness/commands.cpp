// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/harness/commands.hpp"

#include <fmt/format.h>

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "plsnr/error.hpp"
#include "plsnr/harness/presets.hpp"
#include "plsnr/iq_file.hpp"
#include "plsnr/nrframe.hpp"
#include "plsnr/rng.hpp"

#ifndef PLSNR_GIT_REV
#define PLSNR_GIT_REV "unknown"
#endif

namespace plsnr {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Master-stream partition.
constexpr std::uint64_t kStreamSeed = 0;
constexpr std::uint64_t kStreamSweep = 1;
constexpr std::uint64_t kStreamOracle = 2;
constexpr std::uint64_t kStreamRoundtrip = 3;

// Noise-only samples around each frame-path burst, so the PSS search has
// something to reject.
constexpr std::size_t kFrameGuard = 64;
constexpr std::size_t kSnrGridCap = 500;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0.000000"
  return fmt::format("{:.6f}", x);
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::io_error, "cannot write '" + path.string() + "'");
  os << text;
  if (!os) fail(Errc::io_error, "write failed for '" + path.string() + "'");
}

std::filesystem::path prepare_out(const ExperimentConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  if (ec) fail(Errc::io_error, "cannot create output directory '" + c.out_dir + "': " + ec.message());
  return std::filesystem::path(c.out_dir);
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

json base_metadata(const ExperimentConfig& c, const std::string& command) {
  json m;
  m["command"] = command;
  m["version"] = version_string();
  m["git_rev"] = PLSNR_GIT_REV;
  m["config_hash"] = hex64(c.hash());
  m["master_seed"] = c.seed;
  m["threads"] = resolve_threads(c.threads);
  m["config"] = c.to_json();
  return m;
}

void finish_metadata(json& m, const std::filesystem::path& dir, Clock::time_point t0) {
  m["elapsed_s"] = seconds_since(t0);
  write_text(dir / "metadata.json", m.dump(2) + "\n");
}

ScenarioPreset resolved_preset(const ExperimentConfig& c) {
  ScenarioPreset p = find_preset(c.preset, preset_list(c));
  if (c.reflection_loss_db) p.reflection_loss_db = *c.reflection_loss_db;
  return p;
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& c) {
  if (!c.snr_grid.empty()) {
    std::vector<SweepPoint> pts;
    for (double s : c.snr_grid) pts.push_back({std::numeric_limits<double>::quiet_NaN(), 0.0, s, db_to_linear(-s)});
    return pts;
  }
  return sweep_plan(resolved_preset(c), c.budget, c.pbch_grid, c.angle_grid);
}

double link_noise(double p_pbch_db, double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return db_to_linear(p_pbch_db) / db_to_linear(snr_db);
}

LoopbackConfig loopback_config(const ExperimentConfig& c, double p_pbch_db) {
  LoopbackConfig cfg;
  cfg.power.p_pbch_db = p_pbch_db;
  cfg.cell_id = c.frame.cell_id;
  cfg.scramble = c.frame.scramble;
  cfg.genie_sync = c.frame.genie_sync;
  cfg.est = c.frame.est;
  cfg.known_noise = c.frame.known_noise;
  return cfg;
}

// Empirical PBCH SNR from extra loopbacks at one grid point.
double frame_snr_estimate(const ExperimentConfig& c, const PolarCodeSpec& code, double p_pbch_db, double snr_db,
                          RandomStream rng) {
  const LoopbackConfig cfg = loopback_config(c, p_pbch_db);
  FrameLink link;
  link.noise_variance = link_noise(p_pbch_db, snr_db);
  link.lead = link.tail = kFrameGuard;
  std::vector<SsbGrid> tx;
  std::vector<ResourceGrid> rx;
  for (std::size_t b = 0; b < c.frame.snr_blocks; ++b) {
    std::array<BitVec, kPbchCodewords> cws;
    for (auto& w : cws) w = polar_encode(BitVec::random(code.payload_len(), rng), code);
    try {
      LoopbackResult lb = frame_loopback(cws, cfg, link, rng);
      tx.push_back(std::move(lb.tx));
      rx.push_back(std::move(lb.rx_grid));
    } catch (const Error& e) {
      if (e.code() != Errc::sync_failure) throw;
    }
  }
  if (tx.empty()) return std::numeric_limits<double>::quiet_NaN();
  return pbch_snr(tx, rx).aggregate_db();
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
  };
  if (threads == 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
}

void require_frame_code(const PolarCodeSpec& code) {
  if (code.n != kPbchCodewordLen) fail(Errc::config_error, "config: code.n: PBCH slots carry 256-bit codewords");
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string version_string() { return PLSNR_VERSION; }

Observer frame_observer(const ExperimentConfig& c, const PolarCodeSpec& code, double p_pbch_db, double snr_db) {
  require_frame_code(code);
  const LoopbackConfig cfg = loopback_config(c, p_pbch_db);
  FrameLink link;
  link.noise_variance = link_noise(p_pbch_db, snr_db);
  link.lead = link.tail = kFrameGuard;
  return [cfg, link, code](const BitVec& codeword, RandomStream& rng) -> RealVec {
    std::array<BitVec, kPbchCodewords> cws{codeword, BitVec(), BitVec()};
    for (std::size_t i = 1; i < kPbchCodewords; ++i)
      cws[i] = polar_encode(BitVec::random(code.payload_len(), rng), code);
    try {
      return frame_loopback(cws, cfg, link, rng).pbch.codeword_llrs[0];
    } catch (const Error& e) {
      if (e.code() != Errc::sync_failure) throw;
      return RealVec(code.n, 0.0);  // a missed burst carries no information
    }
  };
}

std::vector<ResultRow> der_sweep_rows(const ExperimentConfig& c) {
  const RandomStream master(c.seed);
  const DerSetup setup = make_der_setup(c, master);
  if (c.frame_path) require_frame_code(setup.code);
  const unsigned threads = resolve_threads(c.threads);
  const RandomStream sweep = master.substream(kStreamSweep);

  std::vector<ResultRow> rows;
  const auto pts = sweep_points(c);
  rows.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto t0 = Clock::now();
    const SweepPoint& pt = pts[i];
    ResultRow row;
    if (!std::isnan(pt.theta_deg)) row.theta_deg = pt.theta_deg;
    row.p_pbch_db = pt.p_pbch_db;
    row.snr_db = pt.snr_db;
    const RandomStream point = sweep.substream(i);
    try {
      Observer obs;
      if (c.frame_path) {
        obs = frame_observer(c, setup.code, pt.p_pbch_db, pt.snr_db);
        row.snr_db_est = frame_snr_estimate(c, setup.code, pt.p_pbch_db, pt.snr_db, point.substream(1));
      } else {
        ChannelSpec ch;
        ch.noise_variance = pt.noise_variance;
        obs = awgn_observer(ch);
      }
      row.bounds = estimate_der_bounds(setup, obs, c.trials, point.substream(0), threads);
    } catch (const Error& e) {
      if (e.code() == Errc::config_error) throw;
      row.status = std::string("error: ") + e.what();
    }
    row.seconds = seconds_since(t0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string result_csv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kResultColumns) + "\r\n";
  for (const auto& r : rows) {
    const DerBounds& b = r.bounds;
    const bool ok = r.status == "ok";
    auto val = [&](double x) { return ok ? num(x) : std::string(); };
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\r\n", num(r.theta_deg), num(r.p_pbch_db),
                       num(r.snr_db), num(r.snr_db_est), val(b.lower), val(b.upper), val(b.ci_halfwidth()),
                       val(b.ci_lower), val(b.ci_upper), val(b.raw_lower), val(b.raw_upper), b.trials, b.coin_flips,
                       csv_field(r.status));
  }
  return out;
}

CommandOutput cmd_der_sweep(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  const auto dir = prepare_out(c);
  const RandomStream master(c.seed);
  const DerSetup setup = make_der_setup(c, master);
  const auto rows = der_sweep_rows(c);
  write_text(dir / "results.csv", result_csv(rows));

  CommandOutput out;
  json m = base_metadata(c, "der-sweep");
  m["secrecy_seed_hex"] = setup.seed.to_hex();
  m["rows"] = rows.size();
  json notes = json::array();
  notes.push_back(c.seed_policy == SeedPolicy::fixed
                      ? "secrecy seed (a, t) fixed for the whole run and drawn from the master seed unless pls.seed_hex"
                        " is given"
                      : "secrecy seed (a, t) redrawn for every trial");
  notes.push_back("both attackers see only list entries that pass the CRC and hash to m1 or m2; with no survivor"
                  " both answer with one shared fair coin (coin_flips column)");
  notes.push_back("der_lower/der_upper are clamped to 0.5; raw_lower/raw_upper are the measured error rates");
  if (c.frame_path) {
    notes.push_back(fmt::format("frame path: PBCH slot 0 carries the trial codeword, slots 1 and 2 random codewords;"
                                " {} dummy REs fill the rest of the occupied grid; {} guard samples each side;"
                                " missed PSS sync yields all-zero LLRs",
                                4 * 384 - 4 * 240, kFrameGuard));
    notes.push_back(fmt::format("snr_db_est: aggregate PBCH estimate from {} extra transmissions per point",
                                c.frame.snr_blocks));
  }
  m["notes"] = notes;
  json secs = json::array();
  std::size_t failed = 0;
  json failures = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    secs.push_back(rows[i].seconds);
    if (rows[i].status != "ok") {
      ++failed;
      failures.push_back({{"row", i}, {"status", rows[i].status}});
    }
  }
  m["row_seconds"] = secs;
  m["failed_rows"] = failures;
  out.exit_code = failed ? kExitValidation : kExitOk;
  m["pass"] = failed == 0;
  finish_metadata(m, dir, t0);
  out.report = std::move(m);
  return out;
}

CommandOutput cmd_oracle_validate(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  const auto dir = prepare_out(c);
  const RandomStream master(c.seed);
  const DerSetup setup = make_der_setup(c, master);
  if (setup.pls.l - setup.pls.k > kOracleMaxRandomnessBits)
    fail(Errc::config_error, fmt::format("config: pls: the oracle enumerates 2^(l-k) values; l-k must be <= {}",
                                         kOracleMaxRandomnessBits));
  const unsigned threads = resolve_threads(c.threads);
  const RandomStream base = master.substream(kStreamOracle);

  DerSetup exhaustive = setup;
  const std::size_t k_info = setup.code.k_info;
  exhaustive.list_size = c.oracle.exhaustive_list ? c.oracle.exhaustive_list
                                                  : (k_info < 20 ? std::size_t{1} << k_info : std::size_t{0});
  const std::size_t collapse_trials = exhaustive.list_size ? std::min<std::size_t>(c.oracle.trials, 2000) : 0;

  std::string csv =
      "snr_db,der_lower,der_upper,oracle_codeword,oracle_message,tol_lower,tol_upper,bracketed,collapse_list,"
      "collapse_trials,collapse_mismatches,trials\r\n";
  json points = json::array();
  json violations = json::array();
  std::size_t mismatches_total = 0;
  for (std::size_t i = 0; i < c.oracle.snr_grid.size(); ++i) {
    const double snr = c.oracle.snr_grid[i];
    const Observer obs = awgn_observer(ChannelSpec::awgn_snr_db(snr));
    const RandomStream rs = base.substream(i);
    const DerBounds b = estimate_der_bounds(setup, obs, c.oracle.trials, rs, threads);
    const OracleResult o = der_ml_oracle(setup, obs, c.oracle.trials, rs, threads);

    const double T = static_cast<double>(c.oracle.trials);
    auto var = [&](double p) { return p * (1.0 - p) / T; };
    const double tol_lo = 3.0 * std::sqrt(var(b.raw_lower) + var(o.codeword_rate));
    const double tol_hi = 3.0 * std::sqrt(var(b.raw_upper) + var(o.codeword_rate));
    const bool bracketed = b.raw_lower - tol_lo <= o.codeword_rate && o.codeword_rate <= b.raw_upper + tol_hi;

    std::atomic<std::size_t> mism{0};
    if (collapse_trials)
      parallel_for(collapse_trials, threads, [&](std::size_t t) {
        RandomStream r = rs.substream(t);
        const TrialOutcome out = run_trial(exhaustive, obs, r);
        if (out.upper_correct != out.lower_correct) mism.fetch_add(1);
      });
    mismatches_total += mism.load();

    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\r\n", num(snr), num(b.raw_lower), num(b.raw_upper),
                       num(o.codeword_rate), num(o.rate), num(tol_lo), num(tol_hi), bracketed ? "true" : "false",
                       exhaustive.list_size, collapse_trials, mism.load(), c.oracle.trials);
    json p = {{"snr_db", snr},
              {"der_lower", b.raw_lower},
              {"der_upper", b.raw_upper},
              {"oracle_codeword", o.codeword_rate},
              {"oracle_message", o.rate},
              {"bracketed", bracketed},
              {"collapse_mismatches", mism.load()}};
    if (!bracketed) violations.push_back(p);
    points.push_back(std::move(p));
  }
  write_text(dir / "oracle.csv", csv);

  CommandOutput out;
  json m = base_metadata(c, "oracle-validate");
  m["secrecy_seed_hex"] = setup.seed.to_hex();
  m["notes"] = json::array(
      {"bracketing is checked against the codeword-level ML decoder (most likely single codeword); the"
       " message-level ML rate (sum over all randomness) is reported alongside",
       "tolerance: 3 sigma of the difference of the two independent-binomial estimates",
       "collapse: with the list covering every codeword the two attackers must agree on every trial"});
  m["points"] = points;
  m["violations"] = violations;
  m["collapse_mismatches"] = mismatches_total;
  const bool pass = violations.empty() && mismatches_total == 0;
  m["pass"] = pass;
  out.exit_code = pass ? kExitOk : kExitValidation;
  finish_metadata(m, dir, t0);
  out.report = std::move(m);
  return out;
}

CommandOutput cmd_ssb_roundtrip(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  const auto dir = prepare_out(c);
  const RandomStream master(c.seed);
  const DerSetup setup = make_der_setup(c, master);
  require_frame_code(setup.code);
  const RandomStream base = master.substream(kStreamRoundtrip);
  const RoundtripOptions& o = c.roundtrip;

  const LoopbackConfig cfg = loopback_config(c, o.p_pbch_db);
  FrameLink link;
  link.noise_variance = link_noise(o.p_pbch_db, o.snr_db);
  link.lead = o.lead;
  link.tail = kFrameGuard;
  const double a = std::pow(10.0, o.p_pbch_db / 20.0);

  std::size_t block_errors = 0, codeword_errors = 0, sync_failures = 0, sync_offset_errors = 0;
  std::vector<SsbGrid> snr_tx;
  std::vector<ResourceGrid> snr_rx;
  IqVec evm_rx, evm_ref;
  std::optional<LoopbackResult> first;

  for (std::size_t blk = 0; blk < o.blocks; ++blk) {
    RandomStream rng = base.substream(blk);
    std::array<BitVec, kPbchCodewords> msgs, cws;
    std::array<SecrecySeed, kPbchCodewords> seeds;
    for (std::size_t s = 0; s < kPbchCodewords; ++s) {
      msgs[s] = BitVec::random(setup.pls.k, rng);
      seeds[s] = setup.seed_policy == SeedPolicy::per_trial ? draw_seed(setup.pls, rng) : setup.seed;
      const BitVec r = draw_randomness(setup.pls, rng);
      cws[s] = polar_encode(secrecy_encode(msgs[s], r, seeds[s], setup.pls), setup.code);
    }
    LoopbackResult lb;
    try {
      lb = frame_loopback(cws, cfg, link, rng);
    } catch (const Error& e) {
      if (e.code() != Errc::sync_failure) throw;
      ++sync_failures;
      ++block_errors;
      codeword_errors += kPbchCodewords;
      continue;
    }
    if (lb.sync.offset != link.lead) ++sync_offset_errors;
    bool block_ok = true;
    for (std::size_t s = 0; s < kPbchCodewords; ++s) {
      const DecodedPayload d = decode_payload(scl_decode(lb.pbch.codeword_llrs[s], setup.code, setup.list_size));
      const bool ok = d.crc_ok && secrecy_decode(d.payload, seeds[s], setup.pls) == msgs[s];
      if (!ok) {
        ++codeword_errors;
        block_ok = false;
      }
    }
    if (!block_ok) ++block_errors;

    for (std::size_t sym = 1; sym < kSsbSymbols; ++sym)
      for (std::size_t k = 0; k < kSsbCarriers; ++k)
        if (ssb_layout(sym, k, c.frame.cell_id) == ReClass::pbch)
          evm_ref.push_back(lb.tx.grid.at(sym, lb.tx.ssb_offset + k) / a);
    evm_rx.insert(evm_rx.end(), lb.pbch.equalized.begin(), lb.pbch.equalized.end());
    if (snr_tx.size() < kSnrGridCap) {
      snr_tx.push_back(lb.tx);
      snr_rx.push_back(lb.rx_grid);
    }
    if (!first) first = std::move(lb);
  }

  const double bler = static_cast<double>(block_errors) / static_cast<double>(o.blocks);
  CommandOutput out;
  json m = base_metadata(c, "ssb-roundtrip");
  m["blocks"] = o.blocks;
  m["block_errors"] = block_errors;
  m["bler"] = bler;
  m["codeword_errors"] = codeword_errors;
  m["sync_failures"] = sync_failures;
  m["sync_offset_errors"] = sync_offset_errors;
  m["evm_percent"] = evm_rx.empty() ? json(nullptr) : json(evm(evm_rx, evm_ref));

  if (!snr_tx.empty()) {
    const SnrRecord rec = pbch_snr(snr_tx, snr_rx);
    std::string csv = "subcarrier,snr_db,signal_power,noise_power,symbols\r\n";
    for (std::size_t k = 0; k < rec.snr_db.size(); ++k)
      csv += fmt::format("{},{},{},{},{}\r\n", k, rec.infinite[k] ? "inf" : num(rec.snr_db[k]),
                         num(rec.signal_power[k]), num(rec.noise_power[k]), rec.symbols);
    write_text(dir / "roundtrip_snr.csv", csv);
    const double agg = rec.aggregate_db();
    m["snr_db_est"] = std::isfinite(agg) ? json(agg) : json("inf");
    m["snr_estimate_symbols"] = rec.symbols;
  }

  if (o.dump_iq && first) {
    const auto iq_path = dir / "roundtrip.iq";
    IqFile f;
    f.sample_rate = cfg.ofdm.sample_rate();
    f.carrier_count = cfg.ofdm.occupied;
    f.samples = first->rx_iq;
    write_iq_file(iq_path.string(), f);
    const IqFile back = read_iq_file(iq_path.string());
    const SyncResult sync = cfg.genie_sync ? first->sync : pss_sync(back.samples, cfg.ofdm, cfg.cell_id);
    const ResourceGrid grid = ofdm_demod(back.samples, cfg.ofdm, sync.offset);
    const std::vector<cplx> eff(cfg.ofdm.occupied, cplx{a, 0.0});
    const PbchRx rx = rx_pbch_llrs(grid, cfg.cell_id, cfg.est, cfg.known_noise ? link.noise_variance : 0.0, eff,
                                   first->tx.ssb_offset, cfg.scramble);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < rx.field_llrs.size(); ++i)
      diff += (rx.field_llrs[i] < 0.0) != (first->pbch.field_llrs[i] < 0.0);
    m["iq_dump"] = {{"path", iq_path.string()},
                    {"samples", back.samples.size()},
                    {"sync_offset", sync.offset},
                    {"decision_mismatches", diff}};
  }

  const bool pass = sync_failures <= o.max_sync_failures && bler <= o.max_bler;
  m["pass"] = pass;
  out.exit_code = pass ? kExitOk : kExitValidation;
  finish_metadata(m, dir, t0);
  out.report = std::move(m);
  return out;
}

CommandOutput cmd_link_budget(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  const auto dir = prepare_out(c);
  const ScenarioPreset p = resolved_preset(c);
  const std::vector<double> angles = c.angle_grid.empty() ? p.steer_grid() : c.angle_grid;

  std::string csv =
      "theta_deg,p_pbch_db,p_tx_dbm,l_if_tx_db,l_ud_tx_db,g_array_db,l_pl_db,l_refl_db,g_rx_db,l_hf_db,l_ud_rx_db,"
      "l_if_rx_db,p_rx_dbm,noise_floor_dbm,snr_db\r\n";
  for (double pw : c.pbch_grid)
    for (double th : angles) {
      const BudgetBreakdown b = link_breakdown(p, c.budget, th, pw);
      csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\r\n", num(th), num(pw), num(b.p_tx_dbm),
                         num(b.l_if_tx_db), num(b.l_ud_tx_db), num(b.g_array_db), num(b.l_pl_db), num(b.l_refl_db),
                         num(b.g_rx_db), num(b.l_hf_db), num(b.l_ud_rx_db), num(b.l_if_rx_db), num(b.p_rx_dbm),
                         num(b.noise_floor_dbm), num(b.snr_db));
    }
  write_text(dir / "link_budget.csv", csv);

  CommandOutput out;
  json m = base_metadata(c, "link-budget");
  m["preset"] = p.id;
  m["path_loss_db"] = friis_path_loss(ArraySpec{}.f_c_hz, p.d_m);
  m["boresight_snr_db_at_max_pbch"] = eve_snr(p, c.budget, p.theta_eve_deg, c.pbch_grid.back());
  m["pass"] = true;
  finish_metadata(m, dir, t0);
  out.report = std::move(m);
  return out;
}

CommandOutput cmd_presets(const ExperimentConfig& c) {
  CommandOutput out;
  json list = json::array();
  for (const auto& p : preset_list(c)) {
    json j = {{"id", p.id},
              {"description", p.description},
              {"p_tx_dbm", p.p_tx_dbm},
              {"d_m", p.d_m},
              {"path_loss_db", friis_path_loss(ArraySpec{}.f_c_hz, p.d_m)},
              {"n_tx", p.n_tx},
              {"steer_deg", {p.steer_min_deg, p.steer_step_deg, p.steer_max_deg}},
              {"theta_eve_deg", p.theta_eve_deg},
              {"reflection_loss_db", p.reflection_loss_db},
              {"diffuse_k_db", p.diffuse_k_db ? json(*p.diffuse_k_db) : json(nullptr)},
              {"los", p.los}};
    list.push_back(std::move(j));
  }
  out.report = {{"command", "presets"}, {"version", version_string()}, {"presets", list}};
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"der-sweep", "oracle-validate", "ssb-roundtrip", "link-budget",
                                              "presets"};
  return names;
}

CommandOutput run_command(const std::string& name, const ExperimentConfig& c) {
  if (name == "der-sweep") return cmd_der_sweep(c);
  if (name == "oracle-validate") return cmd_oracle_validate(c);
  if (name == "ssb-roundtrip") return cmd_ssb_roundtrip(c);
  if (name == "link-budget") return cmd_link_budget(c);
  if (name == "presets") return cmd_presets(c);
  fail(Errc::invalid_argument, "unknown command '" + name + "'");
}

}  // namespace plsnr
