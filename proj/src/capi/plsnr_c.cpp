// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/plsnr.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "plsnr/error.hpp"
#include "plsnr/harness/commands.hpp"
#include "plsnr/harness/config.hpp"
#include "plsnr/harness/presets.hpp"
#include "plsnr/scenario.hpp"

struct plsnr_experiment {
  plsnr::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

plsnr_status map_errc(plsnr::Errc c) {
  switch (c) {
    case plsnr::Errc::invalid_argument: return PLSNR_INVALID_ARGUMENT;
    case plsnr::Errc::decode_failure: return PLSNR_DECODE;
    case plsnr::Errc::sync_failure: return PLSNR_SYNC;
    case plsnr::Errc::estimation_failure: return PLSNR_ESTIMATION;
    case plsnr::Errc::budget_exceeded: return PLSNR_BUDGET;
    case plsnr::Errc::config_error: return PLSNR_CONFIG;
    case plsnr::Errc::io_error: return PLSNR_IO;
  }
  return PLSNR_INTERNAL;
}

template <class F>
plsnr_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const plsnr::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PLSNR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLSNR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return PLSNR_INTERNAL;
  }
}

plsnr_status null_arg(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return PLSNR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
plsnr_status set_field(plsnr_experiment* e, F&& assign) {
  if (!e) return null_arg("experiment");
  return guarded([&] {
    plsnr::ExperimentConfig next = e->config;
    assign(next);
    next.validate();
    e->config = std::move(next);
    return PLSNR_OK;
  });
}

plsnr_status make(plsnr::ExperimentConfig c, plsnr_experiment** out) {
  *out = new plsnr_experiment{std::move(c)};
  return PLSNR_OK;
}

}  // namespace

extern "C" {

const char* plsnr_version(void) {
  static const std::string v = plsnr::version_string();
  return v.c_str();
}

const char* plsnr_status_string(plsnr_status s) {
  switch (s) {
    case PLSNR_OK: return "ok";
    case PLSNR_INVALID_ARGUMENT: return "invalid argument";
    case PLSNR_CONFIG: return "configuration error";
    case PLSNR_VALIDATION: return "validation failure";
    case PLSNR_IO: return "i/o error";
    case PLSNR_DECODE: return "decode failure";
    case PLSNR_SYNC: return "sync failure";
    case PLSNR_ESTIMATION: return "estimation failure";
    case PLSNR_BUDGET: return "computational budget exceeded";
    case PLSNR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* plsnr_last_error(void) { return g_last_error.c_str(); }

void plsnr_string_free(char* s) { std::free(s); }

plsnr_status plsnr_experiment_create(plsnr_experiment** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    // The default sweep needs a resolved angle grid, so go through the parser.
    return make(plsnr::parse_config("{}", "<default>"), out);
  });
}

plsnr_status plsnr_experiment_load(const char* path, plsnr_experiment** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!path) return null_arg("path");
  return guarded([&] { return make(plsnr::load_config_file(path), out); });
}

plsnr_status plsnr_experiment_from_string(const char* yaml, plsnr_experiment** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!yaml) return null_arg("yaml");
  return guarded([&] { return make(plsnr::parse_config(yaml), out); });
}

void plsnr_experiment_destroy(plsnr_experiment* e) { delete e; }

plsnr_status plsnr_experiment_set_seed(plsnr_experiment* e, uint64_t seed) {
  return set_field(e, [&](plsnr::ExperimentConfig& c) { c.seed = seed; });
}

plsnr_status plsnr_experiment_set_threads(plsnr_experiment* e, unsigned threads) {
  return set_field(e, [&](plsnr::ExperimentConfig& c) { c.threads = threads; });
}

plsnr_status plsnr_experiment_set_list_size(plsnr_experiment* e, size_t list_size) {
  return set_field(e, [&](plsnr::ExperimentConfig& c) { c.list_size = list_size; });
}

plsnr_status plsnr_experiment_set_trials(plsnr_experiment* e, size_t trials) {
  return set_field(e, [&](plsnr::ExperimentConfig& c) { c.trials = trials; });
}

plsnr_status plsnr_experiment_set_frame_path(plsnr_experiment* e, int enabled) {
  return set_field(e, [&](plsnr::ExperimentConfig& c) { c.frame_path = enabled != 0; });
}

plsnr_status plsnr_experiment_set_output_dir(plsnr_experiment* e, const char* dir) {
  if (!dir) return null_arg("dir");
  return set_field(e, [&](plsnr::ExperimentConfig& c) { c.out_dir = dir; });
}

plsnr_status plsnr_experiment_set_preset(plsnr_experiment* e, const char* id) {
  if (!id) return null_arg("id");
  return set_field(e, [&](plsnr::ExperimentConfig& c) {
    const auto& p = plsnr::find_preset(id, plsnr::preset_list(c));
    c.preset = id;
    c.snr_grid.clear();
    c.angle_grid = p.steer_grid();
  });
}

plsnr_status plsnr_experiment_config_json(const plsnr_experiment* e, char** json_out) {
  if (!e) return null_arg("experiment");
  if (!json_out) return null_arg("json_out");
  *json_out = nullptr;
  return guarded([&] {
    *json_out = dup_string(e->config.to_json().dump(2));
    return PLSNR_OK;
  });
}

plsnr_status plsnr_run(plsnr_experiment* e, const char* command, char** report_json) {
  if (report_json) *report_json = nullptr;
  if (!e) return null_arg("experiment");
  if (!command) return null_arg("command");
  return guarded([&] {
    const plsnr::CommandOutput out = plsnr::run_command(command, e->config);
    if (report_json) *report_json = dup_string(out.report.dump(2));
    if (out.exit_code != plsnr::kExitOk) {
      g_last_error = std::string(command) + ": validation failed";
      return PLSNR_VALIDATION;
    }
    return PLSNR_OK;
  });
}

plsnr_status plsnr_der_sweep_csv(plsnr_experiment* e, char** csv_out) {
  if (!e) return null_arg("experiment");
  if (!csv_out) return null_arg("csv_out");
  *csv_out = nullptr;
  return guarded([&] {
    *csv_out = dup_string(plsnr::result_csv(plsnr::der_sweep_rows(e->config)));
    return PLSNR_OK;
  });
}

plsnr_status plsnr_friis_path_loss(double f_c_hz, double d_m, double* out_db) {
  if (!out_db) return null_arg("out_db");
  return guarded([&] {
    *out_db = plsnr::friis_path_loss(f_c_hz, d_m);
    return PLSNR_OK;
  });
}

plsnr_status plsnr_eve_snr(const char* preset_id, double steer_deg, double p_pbch_db, double* out_db) {
  if (!preset_id) return null_arg("preset_id");
  if (!out_db) return null_arg("out_db");
  return guarded([&] {
    *out_db = plsnr::eve_snr(plsnr::find_preset(preset_id), plsnr::LinkBudget{}, steer_deg, p_pbch_db);
    return PLSNR_OK;
  });
}

}  // extern "C"
