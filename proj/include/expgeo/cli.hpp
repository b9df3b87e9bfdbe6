// Copyright 2026 The expgeo Authors
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
#include <iosfwd>
#include <string>
#include <vector>

namespace expgeo {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUserError = 2,
  kExitNoConvergence = 3,
};

/// Seed used when --seed is absent: EXPGEO_SEED if set, else a fixed value.
/// Throws ConfigError if EXPGEO_SEED is not an unsigned integer.
std::uint64_t default_seed();

/// Runs one command. `args` excludes the program name. The JSON report goes
/// to `out` (or the --out file); one-line diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expgeo
