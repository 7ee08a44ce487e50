// Copyright 2026 The qsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qsmc/core.hpp"
#include "qsmc/errors.hpp"

namespace qsmc {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitIo = 2, kExitValidation = 3 };

int exit_code_for(Errc code);

struct OutputFile {
  std::string name;
  std::uint32_t crc32 = 0;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::string command;
  std::string input;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string grid;
  std::string format;
  ToleranceConfig tolerances;
  std::size_t skipped = 0;
  std::vector<OutputFile> outputs;
};

std::uint32_t crc32_of(const std::string& bytes);

/// Parses "lo:hi:count,lo:hi:count" over (|c0|, |c1|).
struct GridSpec {
  double c0_lo, c0_hi;
  int c0_count;
  double c1_lo, c1_hi;
  int c1_count;
};
GridSpec parse_grid(const std::string& text);

/// Entry point behind the `qsmc` executable. Human-readable output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsmc
