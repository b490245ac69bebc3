// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <string>
#include <vector>

#include "plsnr/scenario.hpp"

namespace plsnr {

// Built-in scenario presets: 1, 2, and 3a..3d (3 is an alias of 3a).
const std::vector<ScenarioPreset>& builtin_presets();

// Looks `id` up in `presets` (the built-ins when empty); unknown ids raise a
// config error.
const ScenarioPreset& find_preset(const std::string& id, const std::vector<ScenarioPreset>& presets = {});

// YAML list under `presets:`; see presets/scenarios.yaml.
std::vector<ScenarioPreset> load_presets_file(const std::string& path);
std::vector<ScenarioPreset> parse_presets(const std::string& yaml_text, const std::string& origin = "<string>");

// Power offsets swept on the PBCH: -25:2:+10 dB, i.e. -25 .. 9.
std::vector<double> default_pbch_grid();

}  // namespace plsnr
