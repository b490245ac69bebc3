// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plsnr/der.hpp"
#include "plsnr/harness/config.hpp"

namespace plsnr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;

struct CommandOutput {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;  // also written to metadata.json
};

// One sweep grid point. Optional fields come out as empty CSV cells.
struct ResultRow {
  std::optional<double> theta_deg;
  double p_pbch_db = 0.0;
  double snr_db = 0.0;
  std::optional<double> snr_db_est;  // frame path only
  DerBounds bounds;
  std::string status = "ok";
  double seconds = 0.0;  // kept out of the CSV
};

inline constexpr const char* kResultColumns =
    "theta_deg,p_pbch_db,snr_db,snr_db_est,der_lower,der_upper,ci,ci_lower,ci_upper,raw_lower,raw_upper,trials,"
    "coin_flips,status";

/// Point i draws from RandomStream(seed).substream(1).substream(i); the fixed
/// secrecy seed comes from substream(0) unless `pls.seed_hex` is set.
std::vector<ResultRow> der_sweep_rows(const ExperimentConfig& c);
std::string result_csv(const std::vector<ResultRow>& rows);

// Frame-path observer: the codeword rides in PBCH slot 0 of a full SSB
// loopback at the given PBCH offset and RE SNR.
Observer frame_observer(const ExperimentConfig& c, const PolarCodeSpec& code, double p_pbch_db, double snr_db);

// All commands write into `c.out_dir`. Validation failures come back as
// kExitValidation; config errors are thrown as Error(config_error).
CommandOutput cmd_der_sweep(const ExperimentConfig& c);
CommandOutput cmd_oracle_validate(const ExperimentConfig& c);
CommandOutput cmd_ssb_roundtrip(const ExperimentConfig& c);
CommandOutput cmd_link_budget(const ExperimentConfig& c);
CommandOutput cmd_presets(const ExperimentConfig& c);

CommandOutput run_command(const std::string& name, const ExperimentConfig& c);
const std::vector<std::string>& command_names();

std::string csv_field(const std::string& s);
std::string version_string();

}  // namespace plsnr
