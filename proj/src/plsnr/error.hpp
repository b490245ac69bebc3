// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#pragma once

#include <stdexcept>
#include <string>

namespace plsnr {

enum class Errc {
  invalid_argument,
  decode_failure,
  sync_failure,
  estimation_failure,
  budget_exceeded,
  config_error,
  io_error,
};

// Single exception type for the library; the C layer maps `code()` to a
// status value.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(Errc::invalid_argument, what);
}

}  // namespace plsnr
