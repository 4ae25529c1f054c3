// Copyright 2026 The sobolev_cantor Authors.
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace sobolev_cantor::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kConfigError = 2,
  kAssertionFailed = 3,
  kIndeterminate = 4,
};

const std::vector<std::string>& command_names();

/// Runs one command, writes its CSV into config.output_dir and a short
/// summary to `log`. Returns an ExitCode.
int run_command(const std::string& command, const RunConfig& config, std::ostream& log);

/// %.17g.
std::string format_double(double v);

}  // namespace sobolev_cantor::cli
