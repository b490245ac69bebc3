// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "plsnr/error.hpp"
#include "plsnr/harness/presets.hpp"
#include "plsnr/rng.hpp"

namespace plsnr {

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& msg) {
  fail(Errc::config_error, "config: " + path + ": " + msg);
}

// A mapping node whose keys must all be consumed; anything left over is an
// unknown field.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) config_fail(path_.empty() ? "<root>" : path_, "expected a mapping");
  }

  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    if (!node_ || node_.IsNull()) return YAML::Node();
    return node_[key];
  }

  template <class T>
  void get(const std::string& key, T& out) {
    const YAML::Node v = raw(key);
    if (!v || v.IsNull()) return;
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      config_fail(child_path(key), "cannot read value '" + scalar_text(v) + "'");
    }
  }

  Section sub(const std::string& key) { return Section(raw(key), child_path(key)); }

  void finish() const {
    if (!node_ || node_.IsNull()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) config_fail(child_path(key), "unknown field");
    }
  }

 private:
  static std::string scalar_text(const YAML::Node& v) { return v.IsScalar() ? v.Scalar() : "<non-scalar>"; }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_grid(Section& s, const std::string& key, std::vector<double>& out) {
  const YAML::Node v = s.raw(key);
  if (!v || v.IsNull()) return;
  const std::string path = s.child_path(key);
  try {
    if (v.IsSequence()) {
      out.clear();
      for (const auto& x : v) out.push_back(x.as<double>());
    } else if (v.IsMap()) {
      Section g(v, path);
      double first = 0, step = 0, last = 0;
      g.get("first", first);
      g.get("step", step);
      g.get("last", last);
      g.finish();
      if (!(step > 0.0) || first > last) config_fail(path, "need step > 0 and first <= last");
      out = range_grid(first, step, last);
    } else {
      config_fail(path, "expected a list or {first, step, last}");
    }
  } catch (const YAML::Exception&) {
    config_fail(path, "grid entries must be numbers");
  }
  if (out.empty()) config_fail(path, "grid must not be empty");
}

bool is_bitstring(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    fail(Errc::config_error, "config: " + origin + ": " + e.what());
  }
  ExperimentConfig c;
  Section top(root, "");
  top.get("name", c.name);
  top.get("seed", c.seed);
  top.get("threads", c.threads);

  {
    Section s = top.sub("pls");
    s.get("k", c.pls.k);
    s.get("l", c.pls.l);
    std::string policy = seed_policy_name(c.seed_policy);
    s.get("seed_policy", policy);
    try {
      c.seed_policy = seed_policy_from_name(policy);
    } catch (const Error& e) {
      config_fail(s.child_path("seed_policy"), e.what());
    }
    s.get("seed_hex", c.seed_hex);
    std::vector<std::string> msgs;
    s.get("messages", msgs);
    if (!msgs.empty()) {
      if (msgs.size() != 2) config_fail(s.child_path("messages"), "expected exactly two messages");
      c.m1 = msgs[0];
      c.m2 = msgs[1];
    } else if (c.pls.k != 1) {
      c.m1 = std::string(c.pls.k, '0');
      c.m2 = std::string(c.pls.k - 1, '0') + "1";
    }
    s.finish();
  }
  {
    Section s = top.sub("code");
    s.get("n", c.n);
    s.get("crc", c.crc);
    std::string cons = "nr";
    s.get("construction", cons);
    try {
      c.construction = construction_from_name(cons);
    } catch (const Error& e) {
      config_fail(s.child_path("construction"), e.what());
    }
    s.get("design_snr_db", c.design_snr_db);
    s.get("list_size", c.list_size);
    s.get("crc_filter", c.crc_filter);
    s.finish();
  }
  {
    Section s = top.sub("der");
    s.get("trials", c.trials);
    std::string path = "fast";
    s.get("path", path);
    if (path != "fast" && path != "frame") config_fail(s.child_path("path"), "expected fast|frame");
    c.frame_path = path == "frame";
    s.finish();
  }
  {
    Section s = top.sub("scenario");
    s.get("preset", c.preset);
    s.get("preset_file", c.preset_file);
    read_grid(s, "pbch_db", c.pbch_grid);
    read_grid(s, "angle_deg", c.angle_grid);
    read_grid(s, "snr_db", c.snr_grid);
    double refl = 0.0;
    if (const auto v = s.raw("reflection_loss_db"); v && !v.IsNull()) {
      s.get("reflection_loss_db", refl);
      c.reflection_loss_db = refl;
    }
    Section b = s.sub("budget");
    b.get("l_if_tx_db", c.budget.l_if_tx_db);
    b.get("l_if_rx_db", c.budget.l_if_rx_db);
    b.get("l_hf_db", c.budget.l_hf_db);
    b.get("l_ud_db", c.budget.l_ud_db);
    b.get("g_tx_db", c.budget.g_tx_db);
    b.get("g_rx_db", c.budget.g_rx_db);
    b.get("noise_floor_dbm", c.budget.noise_floor_dbm);
    b.finish();
    s.finish();
  }
  {
    Section s = top.sub("frame");
    s.get("cell_id", c.frame.cell_id);
    std::string est = ch_est_mode_name(c.frame.est);
    s.get("ch_est", est);
    try {
      c.frame.est = ch_est_mode_from_name(est);
    } catch (const Error& e) {
      config_fail(s.child_path("ch_est"), e.what());
    }
    s.get("genie_sync", c.frame.genie_sync);
    s.get("scramble", c.frame.scramble);
    s.get("known_noise", c.frame.known_noise);
    s.get("snr_blocks", c.frame.snr_blocks);
    s.finish();
  }
  {
    Section s = top.sub("oracle");
    read_grid(s, "snr_db", c.oracle.snr_grid);
    s.get("trials", c.oracle.trials);
    s.get("exhaustive_list", c.oracle.exhaustive_list);
    s.finish();
  }
  {
    Section s = top.sub("roundtrip");
    s.get("blocks", c.roundtrip.blocks);
    s.get("snr_db", c.roundtrip.snr_db);
    s.get("p_pbch_db", c.roundtrip.p_pbch_db);
    s.get("lead", c.roundtrip.lead);
    s.get("dump_iq", c.roundtrip.dump_iq);
    s.get("max_sync_failures", c.roundtrip.max_sync_failures);
    s.get("max_bler", c.roundtrip.max_bler);
    s.finish();
  }
  {
    Section s = top.sub("output");
    s.get("dir", c.out_dir);
    s.finish();
  }
  top.finish();

  if (c.pbch_grid.empty()) c.pbch_grid = default_pbch_grid();
  if (c.angle_grid.empty() && c.snr_grid.empty()) {
    try {
      c.angle_grid = find_preset(c.preset, preset_list(c)).steer_grid();
    } catch (const Error& e) {
      config_fail("scenario.preset", e.what());
    }
  }
  if (c.oracle.snr_grid.empty()) c.oracle.snr_grid = range_grid(-20.0, 1.1, 1.0);
  c.validate();
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(Errc::config_error, "config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), path);
}

void ExperimentConfig::validate() const {
  if (pls.k < 1) config_fail("pls.k", "must be >= 1");
  if (pls.k > pls.l) config_fail("pls.k", "must not exceed pls.l");
  if (!is_bitstring(m1) || !is_bitstring(m2)) config_fail("pls.messages", "messages are bit strings such as \"01\"");
  if (m1.size() != pls.k || m2.size() != pls.k) config_fail("pls.messages", "messages must have k bits");
  if (m1 == m2) config_fail("pls.messages", "the two messages must differ");
  if (!seed_hex.empty()) {
    try {
      (void)SecrecySeed::from_hex(seed_hex, pls);
    } catch (const Error& e) {
      config_fail("pls.seed_hex", e.what());
    }
  }
  if (n < 2 || !std::has_single_bit(n)) config_fail("code.n", "must be a power of two >= 2");
  if (construction == PolarConstruction::nr && n > 1024) config_fail("code.n", "the NR construction covers n <= 1024");
  CrcSpec spec;
  try {
    spec = CrcSpec::from_name(crc);
  } catch (const Error& e) {
    config_fail("code.crc", e.what());
  }
  if (pls.l + spec.width > n) config_fail("pls.l", "payload plus CRC exceeds code.n");
  if (list_size < 1) config_fail("code.list_size", "must be >= 1");
  if (trials < 100) config_fail("der.trials", "must be >= 100");
  if (frame_path && n != kPbchCodewordLen) config_fail("der.path", "the frame path carries 256-bit codewords only");
  if (frame.cell_id < 0 || frame.cell_id >= 1008) config_fail("frame.cell_id", "must be in [0, 1008)");
  if (oracle.trials < 100) config_fail("oracle.trials", "must be >= 100");
  if (roundtrip.blocks < 1) config_fail("roundtrip.blocks", "must be >= 1");
  if (!(roundtrip.max_bler >= 0.0)) config_fail("roundtrip.max_bler", "must be >= 0");
  if (!std::isfinite(budget.noise_floor_dbm)) config_fail("scenario.budget.noise_floor_dbm", "must be finite");
  try {
    budget.validate();
  } catch (const Error& e) {
    config_fail("scenario.budget", e.what());
  }
  if (reflection_loss_db && *reflection_loss_db < 0.0) config_fail("scenario.reflection_loss_db", "must be >= 0");
  if (snr_grid.empty()) {
    if (angle_grid.empty()) config_fail("scenario.angle_deg", "grid must not be empty");
    for (double a : angle_grid)
      if (std::abs(a) > 90.0) config_fail("scenario.angle_deg", "angles must lie in [-90, 90]");
  }
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["seed"] = seed;
  j["pls"] = {{"k", pls.k},
              {"l", pls.l},
              {"seed_policy", seed_policy_name(seed_policy)},
              {"seed_hex", seed_hex},
              {"messages", {m1, m2}}};
  j["code"] = {{"n", n},
               {"crc", crc},
               {"construction", construction == PolarConstruction::nr ? "nr" : "bhattacharyya"},
               {"design_snr_db", design_snr_db},
               {"list_size", list_size},
               {"crc_filter", crc_filter}};
  j["der"] = {{"trials", trials}, {"path", frame_path ? "frame" : "fast"}};
  nlohmann::ordered_json sc;
  sc["preset"] = snr_grid.empty() ? nlohmann::ordered_json(preset) : nlohmann::ordered_json(nullptr);
  sc["preset_file"] = preset_file;
  sc["pbch_db"] = pbch_grid;
  sc["angle_deg"] = angle_grid;
  sc["snr_db"] = snr_grid;
  sc["reflection_loss_db"] = reflection_loss_db ? nlohmann::ordered_json(*reflection_loss_db) : nullptr;
  sc["budget"] = {{"l_if_tx_db", budget.l_if_tx_db}, {"l_if_rx_db", budget.l_if_rx_db},
                  {"l_hf_db", budget.l_hf_db},       {"l_ud_db", budget.l_ud_db},
                  {"g_tx_db", budget.g_tx_db},       {"g_rx_db", budget.g_rx_db},
                  {"noise_floor_dbm", budget.noise_floor_dbm}};
  j["scenario"] = sc;
  j["frame"] = {{"cell_id", frame.cell_id},           {"ch_est", ch_est_mode_name(frame.est)},
                {"genie_sync", frame.genie_sync},     {"scramble", frame.scramble},
                {"known_noise", frame.known_noise},   {"snr_blocks", frame.snr_blocks}};
  j["oracle"] = {{"snr_db", oracle.snr_grid}, {"trials", oracle.trials}, {"exhaustive_list", oracle.exhaustive_list}};
  j["roundtrip"] = {{"blocks", roundtrip.blocks},
                    {"snr_db", std::isfinite(roundtrip.snr_db) ? nlohmann::ordered_json(roundtrip.snr_db)
                                                               : nlohmann::ordered_json("inf")},
                    {"p_pbch_db", roundtrip.p_pbch_db},
                    {"lead", roundtrip.lead},
                    {"dump_iq", roundtrip.dump_iq},
                    {"max_sync_failures", roundtrip.max_sync_failures},
                    {"max_bler", roundtrip.max_bler}};
  // threads and output.dir are deliberately left out: neither changes results.
  return j;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(to_json().dump()); }

PolarCodeSpec make_code(const ExperimentConfig& c) {
  const CrcSpec crc = CrcSpec::from_name(c.crc);
  const auto rel = c.construction == PolarConstruction::nr ? nr_reliability(c.n)
                                                           : bhattacharyya_reliability(c.n, c.design_snr_db);
  return build_spec(c.n, c.pls.l, crc, rel);
}

DerSetup make_der_setup(const ExperimentConfig& c, const RandomStream& master) {
  DerSetup s;
  s.pls = c.pls;
  s.code = make_code(c);
  s.m1 = BitVec::from_string(c.m1);
  s.m2 = BitVec::from_string(c.m2);
  s.seed_policy = c.seed_policy;
  s.crc_filter = c.crc_filter;
  s.list_size = c.list_size;
  if (!c.seed_hex.empty()) {
    s.seed = SecrecySeed::from_hex(c.seed_hex, c.pls);
  } else {
    RandomStream seed_rng = master.substream(0);
    s.seed = draw_seed(c.pls, seed_rng);
  }
  return s;
}

std::vector<ScenarioPreset> preset_list(const ExperimentConfig& c) {
  return c.preset_file.empty() ? builtin_presets() : load_presets_file(c.preset_file);
}

}  // namespace plsnr
