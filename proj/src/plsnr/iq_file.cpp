// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/iq_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "plsnr/error.hpp"

namespace plsnr {

static_assert(std::endian::native == std::endian::little, "IQ codec assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'P', 'L', 'S', 'N', 'R', 'I', 'Q', '1'};
constexpr std::uint32_t kHeaderSize = 32;

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_iq_file(const std::string& path, const IqFile& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, kHeaderSize);
  put<std::uint32_t>(os, f.carrier_count);
  put<double>(os, f.sample_rate);
  put<std::uint64_t>(os, f.samples.size());
  for (const auto& s : f.samples) {
    put<float>(os, static_cast<float>(s.real()));
    put<float>(os, static_cast<float>(s.imag()));
  }
  if (!os) fail(Errc::io_error, "write to '" + path + "' failed");
}

IqFile read_iq_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Errc::io_error, "cannot open '" + path + "'");
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) fail(Errc::io_error, "'" + path + "' is not an IQ file");
  const auto header = get<std::uint32_t>(is);
  if (header < kHeaderSize) fail(Errc::io_error, "'" + path + "': bad header size");
  IqFile f;
  f.carrier_count = get<std::uint32_t>(is);
  f.sample_rate = get<double>(is);
  const auto count = get<std::uint64_t>(is);
  is.seekg(header, std::ios::beg);
  f.samples.resize(count);
  for (auto& s : f.samples) {
    const float re = get<float>(is);
    const float im = get<float>(is);
    s = {re, im};
  }
  if (!is) fail(Errc::io_error, "'" + path + "' is truncated");
  return f;
}

}  // namespace plsnr
