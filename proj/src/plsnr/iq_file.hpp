// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <cstdint>
#include <string>

#include "plsnr/modem.hpp"

namespace plsnr {

// On-disk layout (little endian):
//   char[8] "PLSNRIQ1", u32 header_size (32), u32 carrier_count,
//   f64 sample_rate, u64 sample_count, then sample_count (f32 re, f32 im).
struct IqFile {
  double sample_rate = 0.0;
  std::uint32_t carrier_count = 0;
  IqVec samples;
};

void write_iq_file(const std::string& path, const IqFile& f);
IqFile read_iq_file(const std::string& path);

}  // namespace plsnr
