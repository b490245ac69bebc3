// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors
//
// Command-line front end. Uses only the C interface of libplsnr.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plsnr/plsnr.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t list_size = 0;
  std::size_t trials = 0;
  bool frame_path = false;
  std::string out;
  std::string preset;
  bool quiet = false;
};

int exit_for(plsnr_status s) {
  switch (s) {
    case PLSNR_OK: return kExitOk;
    case PLSNR_CONFIG:
    case PLSNR_INVALID_ARGUMENT:
    case PLSNR_BUDGET: return kExitConfig;
    default: return kExitValidation;
  }
}

int report_failure(plsnr_status s) {
  std::fprintf(stderr, "plsnr: %s: %s\n", plsnr_status_string(s), plsnr_last_error());
  return exit_for(s);
}

struct Handle {
  plsnr_experiment* e = nullptr;
  ~Handle() { plsnr_experiment_destroy(e); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical-layer secrecy experiments on the 5G NR PBCH"};
  app.set_version_flag("--version", std::string(plsnr_version()));
  app.require_subcommand(1);

  Options o;
  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs{
      {"der-sweep", "DER upper/lower bounds over a scenario or SNR grid"},
      {"oracle-validate", "check the list bounds against exhaustive ML on a tiny code"},
      {"ssb-roundtrip", "full SSB loopback: BLER, EVM, per-subcarrier SNR"},
      {"link-budget", "additive link budget per beam angle"},
      {"presets", "list scenario presets"},
  };
  std::vector<CLI::App*> cmds;
  CLI::Option* seed_opt = nullptr;
  std::vector<CLI::Option*> seed_opts, threads_opts, list_opts, trials_opts, frame_opts, out_opts, preset_opts;
  for (const auto& s : subs) {
    CLI::App* c = app.add_subcommand(s.name, s.help);
    c->add_option("--config", o.config, "experiment YAML")->check(CLI::ExistingFile);
    seed_opt = c->add_option("--seed", o.seed, "master RNG seed");
    seed_opts.push_back(seed_opt);
    threads_opts.push_back(c->add_option("--threads", o.threads, "worker threads (0: all cores)"));
    list_opts.push_back(c->add_option("--list-size", o.list_size, "SCL list size L"));
    trials_opts.push_back(c->add_option("--trials", o.trials, "trials per grid point"));
    frame_opts.push_back(c->add_flag("--frame-path", o.frame_path, "run every trial through the full SSB loopback"));
    out_opts.push_back(c->add_option("--out", o.out, "output directory"));
    if (std::string(s.name) == "link-budget" || std::string(s.name) == "der-sweep")
      preset_opts.push_back(c->add_option("--preset,preset", o.preset, "scenario preset id"));
    c->add_flag("-q,--quiet", o.quiet, "do not print the report");
    cmds.push_back(c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  std::string command;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < cmds.size(); ++i)
    if (cmds[i]->parsed()) {
      command = subs[i].name;
      idx = i;
    }

  Handle h;
  plsnr_status s = o.config.empty() ? plsnr_experiment_create(&h.e) : plsnr_experiment_load(o.config.c_str(), &h.e);
  if (s != PLSNR_OK) return report_failure(s);

  auto given = [idx](const std::vector<CLI::Option*>& v) { return v[idx]->count() > 0; };
  if (s == PLSNR_OK && given(seed_opts)) s = plsnr_experiment_set_seed(h.e, o.seed);
  if (s == PLSNR_OK && given(threads_opts)) s = plsnr_experiment_set_threads(h.e, o.threads);
  if (s == PLSNR_OK && given(list_opts)) s = plsnr_experiment_set_list_size(h.e, o.list_size);
  if (s == PLSNR_OK && given(trials_opts)) s = plsnr_experiment_set_trials(h.e, o.trials);
  if (s == PLSNR_OK && o.frame_path) s = plsnr_experiment_set_frame_path(h.e, 1);
  if (s == PLSNR_OK && given(out_opts)) s = plsnr_experiment_set_output_dir(h.e, o.out.c_str());
  if (s == PLSNR_OK && !o.preset.empty()) s = plsnr_experiment_set_preset(h.e, o.preset.c_str());
  if (s != PLSNR_OK) return report_failure(s);

  char* report = nullptr;
  s = plsnr_run(h.e, command.c_str(), &report);
  std::unique_ptr<char, void (*)(char*)> guard(report, plsnr_string_free);
  if (report && !o.quiet) std::printf("%s\n", report);
  if (s != PLSNR_OK) return report_failure(s);
  return kExitOk;
}
