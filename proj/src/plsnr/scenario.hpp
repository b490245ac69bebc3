// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace plsnr {

inline constexpr double kSpeedOfLight = 299792458.0;

// 10 log10((4 pi f d / c)^2)
double friis_path_loss(double f_c_hz, double d_m);

/// Uniform rectangular array, azimuth cut through the x axis.
struct ArraySpec {
  std::size_t nx = 4;
  std::size_t ny = 4;
  double dx_m = 0.005;
  double dy_m = 0.005;
  double f_c_hz = 27e9;
  double peak_gain_db = 51.68;

  double spacing_wavelengths() const { return dx_m * f_c_hz / kSpeedOfLight; }
  void validate() const;
};

/// Array-factor gain towards `observe_deg` with the beam steered to
/// `steer_deg` (both azimuth, [-90, 90]). The pattern is power-normalized:
/// its integral over the cut is the same for every steering angle and the
/// unsteered broadside value is `peak_gain_db`. Peak gain moves a little with
/// steering (slightly up near 10 deg at 0.45 lambda, down past ~15 deg).
/// Exact nulls are floored at kGainFloorDb.
double array_gain(const ArraySpec& a, double steer_deg, double observe_deg);
// Linear |AF|^2 / (nx ny)^2 before normalization.
double array_factor_power(const ArraySpec& a, double steer_deg, double observe_deg);

inline constexpr double kGainFloorDb = -200.0;

struct LinkBudget {
  double l_if_tx_db = 4.33;
  double l_if_rx_db = 6.68;
  double l_hf_db = 0.57;
  double l_ud_db = 13.0;
  double g_tx_db = 51.68;
  double g_rx_db = 33.9;
  double noise_floor_dbm = -40.0;

  void validate() const;
};

struct ScenarioPreset {
  std::string id;
  std::string description;
  double p_tx_dbm = 0.0;
  double d_m = 1.0;
  std::size_t n_tx = 0;
  double steer_min_deg = -45.0;
  double steer_max_deg = 45.0;
  double steer_step_deg = 1.0;
  double theta_eve_deg = 0.0;
  double reflection_loss_db = 0.0;
  // Steering-independent scattered power, `diffuse_k_db` below the LOS
  // boresight power. Empty means a pure array-factor (free-space) channel.
  std::optional<double> diffuse_k_db;
  bool los = true;

  void validate() const;
  std::vector<double> steer_grid() const;
};

/// Additive terms of one link, all in dB / dBm.
struct BudgetBreakdown {
  double p_tx_dbm, p_pbch_db, l_if_tx_db, l_ud_tx_db, g_array_db, l_pl_db, l_refl_db, g_rx_db, l_hf_db, l_ud_rx_db,
      l_if_rx_db;
  double p_rx_dbm, noise_floor_dbm, snr_db;
};

// Array gain towards Eve including the diffuse floor; equals
// budget.g_tx_db when steered at Eve on broadside.
double effective_tx_gain(const ScenarioPreset& preset, const LinkBudget& budget, double steer_deg,
                         const ArraySpec& geometry = {});

BudgetBreakdown link_breakdown(const ScenarioPreset& preset, const LinkBudget& budget, double steer_deg,
                               double p_pbch_db, const ArraySpec& geometry = {});
double eve_snr(const ScenarioPreset& preset, const LinkBudget& budget, double steer_deg, double p_pbch_db,
               const ArraySpec& geometry = {});

struct SweepPoint {
  double theta_deg;
  double p_pbch_db;
  double snr_db;
  double noise_variance;  // at unit signal power
};

// Row order: power-major, angle-minor.
std::vector<SweepPoint> sweep_plan(const ScenarioPreset& preset, const LinkBudget& budget,
                                   const std::vector<double>& pbch_grid, const std::vector<double>& angle_grid,
                                   const ArraySpec& geometry = {});

// first:step:last inclusive, tolerant of rounding.
std::vector<double> range_grid(double first, double step, double last);

}  // namespace plsnr
