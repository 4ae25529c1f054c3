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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobolev_cantor/analysis.hpp"
#include "sobolev_cantor/composite.hpp"
#include "sobolev_cantor/degree.hpp"
#include "sobolev_cantor/tentacles.hpp"

namespace sobolev_cantor::cli {

/// Rejected configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct ProbeConfig {
  Vec center;
  double radius = 0.3;
  std::optional<Vec> y;  // defaults to the image of the center
};

struct ChecksConfig {
  std::size_t samples = 10000;   // jacobian survey points
  std::size_t per_face = 1000;   // boundary samples per face
  double fd_step = 1e-7;
};

struct WitnessConfig {
  std::vector<int> word{7};
  int samples = 257;
};

struct SliceConfig {
  int axis_u = 0;
  int axis_v = 2;
  double offset = 0.0;  // value of the remaining coordinates
  int grid = 65;
};

struct RunConfig {
  int n = 3;
  double beta = 4.0;
  Variant variant = Variant::T1;
  ScheduleMode schedule = ScheduleMode::Demo;
  int max_stage = 3;
  std::optional<int> stage;  // restricts stage loops to this stage
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  unsigned workers = 0;

  QuadratureConfig quadrature;
  ChecksConfig checks;
  WitnessConfig witness;
  SliceConfig slice;

  /// "stage" uses the variant's stage maps; otherwise a named fixture:
  /// identity, antipodal, scale2, reflect, square (n = 2).
  std::string degree_map = "stage";
  DegreeSettings degree;
  int degree_start_level = 4;
  std::vector<ProbeConfig> probes;

  /// Stages visited by the per-stage commands.
  std::vector<int> stages() const;
  int last_stage() const { return stage.value_or(max_stage); }
};

/// Parses and validates a JSON config. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Re-checks constraints after command line overrides.
void validate(const RunConfig& config);

}  // namespace sobolev_cantor::cli
