// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/harness/presets.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "plsnr/error.hpp"

namespace plsnr {

namespace {

ScenarioPreset make(std::string id, std::string desc, double p_tx, double d, std::size_t n_tx, double theta_eve,
                    double refl, double k_db, bool los) {
  ScenarioPreset p;
  p.id = std::move(id);
  p.description = std::move(desc);
  p.p_tx_dbm = p_tx;
  p.d_m = d;
  p.n_tx = n_tx;
  p.theta_eve_deg = theta_eve;
  p.reflection_loss_db = refl;
  p.diffuse_k_db = k_db;
  p.los = los;
  return p;
}

}  // namespace

const std::vector<ScenarioPreset>& builtin_presets() {
  static const std::vector<ScenarioPreset> presets = {
      make("1", "Conference room, NLOS via window-frame reflection", 7.0, 18.86, 140, 0.0, 3.0, 10.0, false),
      make("2", "Laboratory, LOS, rich scattering", -3.0, 6.54, 250, 0.0, 0.0, 6.0, true),
      make("3a", "Measurement chamber, position A (facing)", -3.0, 8.41, 125, 0.0, 0.0, 20.0, true),
      make("3b", "Measurement chamber, position B (+45 deg rotation)", -3.0, 8.41, 125, 45.0, 0.0, 20.0, true),
      make("3c", "Measurement chamber, position C (-45 deg rotation)", -3.0, 8.41, 125, -45.0, 0.0, 20.0, true),
      make("3d", "Measurement chamber, position D (perpendicular)", -3.0, 8.41, 125, 90.0, 0.0, 20.0, true),
  };
  return presets;
}

const ScenarioPreset& find_preset(const std::string& id, const std::vector<ScenarioPreset>& presets) {
  const auto& list = presets.empty() ? builtin_presets() : presets;
  const std::string key = id == "3" ? "3a" : id;
  for (const auto& p : list)
    if (p.id == key) return p;
  std::string known;
  for (const auto& p : list) known += (known.empty() ? "" : ", ") + p.id;
  fail(Errc::config_error, "unknown scenario preset '" + id + "' (known: " + known + ")");
}

std::vector<double> default_pbch_grid() { return range_grid(-25.0, 2.0, 10.0); }

std::vector<ScenarioPreset> parse_presets(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    fail(Errc::config_error, origin + ": " + e.what());
  }
  const YAML::Node list = root["presets"];
  if (!list || !list.IsSequence()) fail(Errc::config_error, origin + ": expected a 'presets' list");
  std::vector<ScenarioPreset> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const YAML::Node n = list[i];
    const std::string where = origin + ": presets[" + std::to_string(i) + "]";
    try {
      ScenarioPreset p;
      p.id = n["id"].as<std::string>();
      p.description = n["description"].as<std::string>("");
      p.p_tx_dbm = n["p_tx_dbm"].as<double>();
      p.d_m = n["d_m"].as<double>();
      p.n_tx = n["n_tx"].as<std::size_t>(0);
      if (const auto s = n["steer"]) {
        p.steer_min_deg = s["first"].as<double>();
        p.steer_step_deg = s["step"].as<double>();
        p.steer_max_deg = s["last"].as<double>();
      }
      p.theta_eve_deg = n["theta_eve_deg"].as<double>(0.0);
      p.reflection_loss_db = n["reflection_loss_db"].as<double>(0.0);
      if (n["diffuse_k_db"] && !n["diffuse_k_db"].IsNull()) p.diffuse_k_db = n["diffuse_k_db"].as<double>();
      p.los = n["los"].as<bool>(true);
      p.validate();
      out.push_back(std::move(p));
    } catch (const YAML::Exception& e) {
      fail(Errc::config_error, where + ": " + e.what());
    } catch (const Error& e) {
      fail(Errc::config_error, where + ": " + e.what());
    }
  }
  return out;
}

std::vector<ScenarioPreset> load_presets_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(Errc::config_error, "cannot open preset file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_presets(ss.str(), path);
}

}  // namespace plsnr
