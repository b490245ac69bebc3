// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plsnr/error.hpp"

namespace plsnr {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double to_db(double lin) { return lin > 0.0 ? std::max(10.0 * std::log10(lin), kGainFloorDb) : kGainFloorDb; }

// |AF_x|^2 for psi = k d (sin obs - sin steer), summed as N + 2 sum (N - m) cos(m psi).
double af_x_power(std::size_t n, double psi) {
  double p = static_cast<double>(n);
  for (std::size_t m = 1; m < n; ++m) p += 2.0 * static_cast<double>(n - m) * std::cos(static_cast<double>(m) * psi);
  return std::max(p, 0.0);
}

// Integral of |AF_x|^2 over observe in [-pi/2, pi/2], via
// int cos(m kd (sin t - s)) dt = pi J0(m kd) cos(m kd s).
double af_x_integral(std::size_t n, double kd, double sin_steer) {
  double acc = std::numbers::pi * static_cast<double>(n);
  for (std::size_t m = 1; m < n; ++m) {
    const double x = static_cast<double>(m) * kd;
    acc += 2.0 * static_cast<double>(n - m) * std::numbers::pi * std::cyl_bessel_j(0.0, x) * std::cos(x * sin_steer);
  }
  return acc;
}

}  // namespace

double friis_path_loss(double f_c_hz, double d_m) {
  require(f_c_hz > 0.0 && d_m > 0.0 && std::isfinite(f_c_hz) && std::isfinite(d_m),
          "friis_path_loss: frequency and distance must be positive");
  return 20.0 * std::log10(4.0 * std::numbers::pi * f_c_hz * d_m / kSpeedOfLight);
}

void ArraySpec::validate() const {
  require(nx >= 1 && ny >= 1, "array: need at least one element per axis");
  require(dx_m > 0.0 && dy_m > 0.0, "array: element spacing must be positive");
  require(f_c_hz > 0.0, "array: carrier frequency must be positive");
}

double array_factor_power(const ArraySpec& a, double steer_deg, double observe_deg) {
  a.validate();
  require(std::abs(steer_deg) <= 90.0 && std::abs(observe_deg) <= 90.0, "array: angles must lie in [-90, 90]");
  const double kd = 2.0 * std::numbers::pi * a.spacing_wavelengths();
  const double psi = kd * (std::sin(observe_deg * kDeg) - std::sin(steer_deg * kDeg));
  const double nx = static_cast<double>(a.nx);
  return af_x_power(a.nx, psi) / (nx * nx);
}

double array_gain(const ArraySpec& a, double steer_deg, double observe_deg) {
  const double af = array_factor_power(a, steer_deg, observe_deg);
  const double kd = 2.0 * std::numbers::pi * a.spacing_wavelengths();
  const double scale = af_x_integral(a.nx, kd, 0.0) / af_x_integral(a.nx, kd, std::sin(steer_deg * kDeg));
  return a.peak_gain_db + to_db(af * scale);
}

void LinkBudget::validate() const {
  for (double v : {l_if_tx_db, l_if_rx_db, l_hf_db, l_ud_db})
    require(v >= 0.0 && std::isfinite(v), "link budget: losses must be finite and >= 0");
  require(std::isfinite(g_tx_db) && std::isfinite(g_rx_db) && std::isfinite(noise_floor_dbm),
          "link budget: gains and noise floor must be finite");
}

void ScenarioPreset::validate() const {
  require(d_m > 0.0, "preset " + id + ": distance must be positive");
  require(steer_step_deg > 0.0 && steer_min_deg <= steer_max_deg, "preset " + id + ": bad steering range");
  require(std::abs(steer_min_deg) <= 90.0 && std::abs(steer_max_deg) <= 90.0,
          "preset " + id + ": steering must stay within [-90, 90]");
  require(std::abs(theta_eve_deg) <= 90.0, "preset " + id + ": Eve's angle must lie in [-90, 90]");
  require(reflection_loss_db >= 0.0, "preset " + id + ": reflection loss must be >= 0");
}

std::vector<double> range_grid(double first, double step, double last) {
  require(step > 0.0 && first <= last, "range: need step > 0 and first <= last");
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9));
  // snap to 1e-9 so 0.1-type steps print cleanly
  for (std::size_t i = 0; i <= n; ++i) g.push_back(std::round((first + static_cast<double>(i) * step) * 1e9) / 1e9);
  return g;
}

std::vector<double> ScenarioPreset::steer_grid() const { return range_grid(steer_min_deg, steer_step_deg, steer_max_deg); }

double effective_tx_gain(const ScenarioPreset& preset, const LinkBudget& budget, double steer_deg,
                         const ArraySpec& geometry) {
  ArraySpec a = geometry;
  a.peak_gain_db = 0.0;
  const double g = std::pow(10.0, array_gain(a, steer_deg, preset.theta_eve_deg) / 10.0);
  if (!preset.diffuse_k_db) return budget.g_tx_db + to_db(g);
  const double floor = std::pow(10.0, -*preset.diffuse_k_db / 10.0);
  return budget.g_tx_db + to_db((g + floor) / (1.0 + floor));
}

BudgetBreakdown link_breakdown(const ScenarioPreset& preset, const LinkBudget& budget, double steer_deg,
                               double p_pbch_db, const ArraySpec& geometry) {
  preset.validate();
  budget.validate();
  BudgetBreakdown b{};
  b.p_tx_dbm = preset.p_tx_dbm;
  b.p_pbch_db = p_pbch_db;
  b.l_if_tx_db = budget.l_if_tx_db;
  b.l_ud_tx_db = budget.l_ud_db;
  b.g_array_db = effective_tx_gain(preset, budget, steer_deg, geometry);
  b.l_pl_db = friis_path_loss(geometry.f_c_hz, preset.d_m);
  b.l_refl_db = preset.reflection_loss_db;
  b.g_rx_db = budget.g_rx_db;
  b.l_hf_db = 2.0 * budget.l_hf_db;
  b.l_ud_rx_db = budget.l_ud_db;
  b.l_if_rx_db = budget.l_if_rx_db;
  b.p_rx_dbm = b.p_tx_dbm + b.p_pbch_db - b.l_if_tx_db - b.l_ud_tx_db + b.g_array_db - b.l_pl_db - b.l_refl_db +
               b.g_rx_db - b.l_hf_db - b.l_ud_rx_db - b.l_if_rx_db;
  b.noise_floor_dbm = budget.noise_floor_dbm;
  b.snr_db = b.p_rx_dbm - b.noise_floor_dbm;
  return b;
}

double eve_snr(const ScenarioPreset& preset, const LinkBudget& budget, double steer_deg, double p_pbch_db,
               const ArraySpec& geometry) {
  return link_breakdown(preset, budget, steer_deg, p_pbch_db, geometry).snr_db;
}

std::vector<SweepPoint> sweep_plan(const ScenarioPreset& preset, const LinkBudget& budget,
                                   const std::vector<double>& pbch_grid, const std::vector<double>& angle_grid,
                                   const ArraySpec& geometry) {
  require(!pbch_grid.empty() && !angle_grid.empty(), "sweep_plan: grids must be non-empty");
  std::vector<SweepPoint> rows;
  rows.reserve(pbch_grid.size() * angle_grid.size());
  for (double p : pbch_grid)
    for (double th : angle_grid) {
      const double snr = eve_snr(preset, budget, th, p, geometry);
      rows.push_back({th, p, snr, std::pow(10.0, -snr / 10.0)});
    }
  return rows;
}

}  // namespace plsnr
