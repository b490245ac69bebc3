/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 The plsnr Authors
 *
 * C interface to the plsnr library. All functions are thread-safe as long as
 * one experiment handle is not shared between threads; the last error message
 * is kept per thread.
 */
#ifndef PLSNR_PLSNR_H
#define PLSNR_PLSNR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PLSNR_BUILDING_LIBRARY)
#define PLSNR_API __declspec(dllexport)
#else
#define PLSNR_API __declspec(dllimport)
#endif
#else
#define PLSNR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plsnr_status {
  PLSNR_OK = 0,
  PLSNR_INVALID_ARGUMENT = 1,
  PLSNR_CONFIG = 2,     /* schema or value error in a configuration */
  PLSNR_VALIDATION = 3, /* a command ran and its check failed */
  PLSNR_IO = 4,
  PLSNR_DECODE = 5,
  PLSNR_SYNC = 6,
  PLSNR_ESTIMATION = 7,
  PLSNR_BUDGET = 8, /* a request exceeds a computational limit */
  PLSNR_INTERNAL = 9
} plsnr_status;

typedef struct plsnr_experiment plsnr_experiment;

PLSNR_API const char* plsnr_version(void);
PLSNR_API const char* plsnr_status_string(plsnr_status s);
/* Message of the last failing call on this thread; never NULL. */
PLSNR_API const char* plsnr_last_error(void);
/* Frees strings returned through char** out-parameters. */
PLSNR_API void plsnr_string_free(char* s);

/* Default configuration. */
PLSNR_API plsnr_status plsnr_experiment_create(plsnr_experiment** out);
PLSNR_API plsnr_status plsnr_experiment_load(const char* path, plsnr_experiment** out);
PLSNR_API plsnr_status plsnr_experiment_from_string(const char* yaml, plsnr_experiment** out);
PLSNR_API void plsnr_experiment_destroy(plsnr_experiment* e);

/* Overrides; each one revalidates the configuration. */
PLSNR_API plsnr_status plsnr_experiment_set_seed(plsnr_experiment* e, uint64_t seed);
PLSNR_API plsnr_status plsnr_experiment_set_threads(plsnr_experiment* e, unsigned threads);
PLSNR_API plsnr_status plsnr_experiment_set_list_size(plsnr_experiment* e, size_t list_size);
PLSNR_API plsnr_status plsnr_experiment_set_trials(plsnr_experiment* e, size_t trials);
PLSNR_API plsnr_status plsnr_experiment_set_frame_path(plsnr_experiment* e, int enabled);
PLSNR_API plsnr_status plsnr_experiment_set_output_dir(plsnr_experiment* e, const char* dir);
PLSNR_API plsnr_status plsnr_experiment_set_preset(plsnr_experiment* e, const char* id);

/* Resolved configuration as JSON. */
PLSNR_API plsnr_status plsnr_experiment_config_json(const plsnr_experiment* e, char** json_out);

/* Runs "der-sweep", "oracle-validate", "ssb-roundtrip", "link-budget" or
 * "presets". `report_json` (may be NULL) receives the report, also on
 * PLSNR_VALIDATION. */
PLSNR_API plsnr_status plsnr_run(plsnr_experiment* e, const char* command, char** report_json);

/* Sweep rows as CSV text without touching the file system. */
PLSNR_API plsnr_status plsnr_der_sweep_csv(plsnr_experiment* e, char** csv_out);

/* Free-space loss in dB. */
PLSNR_API plsnr_status plsnr_friis_path_loss(double f_c_hz, double d_m, double* out_db);
/* Eve's PBCH SNR in dB for a named built-in preset. */
PLSNR_API plsnr_status plsnr_eve_snr(const char* preset_id, double steer_deg, double p_pbch_db, double* out_db);

#ifdef __cplusplus
}
#endif

#endif /* PLSNR_PLSNR_H */
