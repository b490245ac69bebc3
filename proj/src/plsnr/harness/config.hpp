// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plsnr/der.hpp"
#include "plsnr/nrframe.hpp"
#include "plsnr/polar.hpp"
#include "plsnr/scenario.hpp"
#include "plsnr/secrecy.hpp"

namespace plsnr {

struct FrameOptions {
  int cell_id = 0;
  ChEstMode est = ChEstMode::ls_smooth;
  bool genie_sync = false;
  bool scramble = true;
  bool known_noise = true;
  std::size_t snr_blocks = 50;  // extra transmissions per point for the SNR estimate
};

struct OracleOptions {
  std::vector<double> snr_grid;  // dB per symbol
  std::size_t trials = 10000;
  std::size_t exhaustive_list = 0;  // 0: 2^k_info
};

struct RoundtripOptions {
  std::size_t blocks = 1000;
  double snr_db = 10.0;  // PBCH RE SNR; +inf for a noiseless link
  double p_pbch_db = 0.0;
  std::size_t lead = 0;
  bool dump_iq = false;
  std::size_t max_sync_failures = 0;
  double max_bler = 1e-2;
};

/// Fully resolved experiment. Every field ends up in metadata.json.
struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t seed = 1;
  unsigned threads = 0;

  SecrecyParams pls;
  SeedPolicy seed_policy = SeedPolicy::fixed;
  std::string seed_hex;  // empty: drawn from the master seed
  std::string m1 = "0";
  std::string m2 = "1";

  std::size_t n = 256;
  std::string crc = "crc11";
  PolarConstruction construction = PolarConstruction::nr;
  double design_snr_db = 0.0;
  std::size_t list_size = 8;
  bool crc_filter = true;

  std::size_t trials = 1000;
  bool frame_path = false;

  // Either a preset sweep or an explicit list of SNRs.
  std::string preset = "2";
  std::string preset_file;
  std::vector<double> pbch_grid;
  std::vector<double> angle_grid;
  std::vector<double> snr_grid;
  LinkBudget budget;
  std::optional<double> reflection_loss_db;

  FrameOptions frame;
  OracleOptions oracle;
  RoundtripOptions roundtrip;

  std::string out_dir = "out";

  void validate() const;
  nlohmann::ordered_json to_json() const;
  std::uint64_t hash() const;  // FNV-1a of the canonical JSON dump
};

ExperimentConfig parse_config(const std::string& yaml_text, const std::string& origin = "<string>");
ExperimentConfig load_config_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

// Objects derived from a config.
PolarCodeSpec make_code(const ExperimentConfig& c);
DerSetup make_der_setup(const ExperimentConfig& c, const RandomStream& master);
std::vector<ScenarioPreset> preset_list(const ExperimentConfig& c);

}  // namespace plsnr
