// Copyright 2026 The crext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CREXT_CLI_HPP
#define CREXT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crext/io.hpp"

namespace crext::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidInput = 2,
  kNumericalFailure = 3,
};

struct RunConfig {
  double tol_extend = 1e-9;
  double tol_moment = 1e-8;
  double tol_leaf = 1e-12;
  int grid_n = 512;
  std::vector<double> leaves;  ///< empty selects the default ladder
  std::uint64_t seed = 0;
  std::string out;             ///< empty writes to standard output

  /// Throws InputError unless all tolerances are positive and grid_n is a
  /// power of two in [64, 4096].
  void validate() const;
};

io::json config_to_json(const RunConfig& c);
/// Overlays the keys present in j onto c.
void apply_config_json(const io::json& j, RunConfig& c);

/// Entry point shared by the executable and the tests. Reports go to `out`
/// (or the --out file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crext::cli

#endif  // CREXT_CLI_HPP
