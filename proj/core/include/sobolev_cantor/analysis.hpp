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
#include <functional>
#include <vector>

#include "sobolev_cantor/composite.hpp"
#include "sobolev_cantor/stage_map.hpp"

namespace sobolev_cantor {

struct QuadratureConfig {
  int resolution = 8;        // midpoint cells per breakpoint interval and axis
  int refinement_depth = 2;  // extra 2^depth cells on steep pieces and log shells
  /// Central-difference step as a fraction of the smallest active cell width;
  /// 0 selects the analytic derivative.
  double fd_relative_step = 0.0;
  std::uint64_t seed = 1;
  /// Wall-clock limit in seconds for long tables; 0 means none.
  double time_budget = 0.0;

  /// Throws std::invalid_argument on resolution < 4 or fd step >= 1e-3.
  void validate() const;
};

/// Axis-aligned box with optional interior breakpoints per axis.
struct Box {
  Vec lo;
  Vec hi;
  std::vector<std::vector<double>> breaks;  // empty or one list per axis
};
using Region = std::vector<Box>;

/// Midpoint rule over a box; `resolution` cells per breakpoint interval.
double integrate_box(const Box& box, int resolution, const std::function<double(const Vec&)>& f);

/// Midpoint rule with stratified refinement: a cell is split into 2^n children,
/// up to `depth` times, while `sig` differs between its corners and center.
double integrate_box_adaptive(const Box& box, int resolution, int depth,
                              const std::function<double(const Vec&)>& f,
                              const std::function<std::uint64_t(const Vec&)>& sig);

struct SeminormReport {
  double value = 0.0;     // at the configured resolution
  double refined = 0.0;   // at twice the resolution
  double relative_change = 0.0;
};

/// Integral of |Df|_F^p over the region, plus one refinement step.
SeminormReport seminorm(const StageMap& f, double p, const Region& region,
                        const QuadratureConfig& config);

struct CauchyRow {
  int k = 0;
  double cells = 0.0;       // deepest tower cells
  double tentacles = 0.0;   // level-k tentacle shells
  double integral = 0.0;
  double refined = 0.0;
  double relative_change = 0.0;
  double envelope = 0.0;
  bool pass = false;
};

struct CauchyTable {
  Variant variant = Variant::T1;
  double p = 2.0;
  std::vector<CauchyRow> rows;
  double c = 0.0;  // single fitted constant of c (2^{-k beta} + k^{-2})
  bool positive = false;
  bool decreasing = false;
  bool consistent = false;  // every refinement step below 5%
  bool complete = true;     // false when the time budget stopped the table early
  bool pass() const { return complete && positive && decreasing && consistent; }
};

/// Integral of |Df_k - Df_{k-1}|_F^{n-1} over the change region for demo
/// T1 or T2 stages, k = 1..k_max.
CauchyTable cauchy_table(Variant variant, int n, double beta, int k_max,
                         const QuadratureConfig& config);

/// One row of the table at the given resolution (cells, tentacles).
std::pair<double, double> cauchy_row(Variant variant, int n, double beta, int k, int resolution,
                                     int refinement_depth);

/// Integral over the level-(k-1) tower cell with the given word (length k-1),
/// tentacle points excluded. Exposed to check that cells are congruent.
double cauchy_cell_integral(Variant variant, int n, double beta, int k,
                            const std::vector<int>& cell_word, int resolution,
                            int refinement_depth);
/// Integral over the shell of one level-k tentacle restricted to the axial
/// interval [t_lo, t_hi] of its chart.
double cauchy_tentacle_integral(Variant variant, int n, double beta, int k,
                                const std::vector<int>& word, double t_lo, double t_hi,
                                int resolution, int refinement_depth);

struct JacobianSurvey {
  std::size_t samples = 0;
  std::size_t positive = 0;
  double fraction = 0.0;
  double min_det = 0.0;
  std::vector<Vec> nonpositive;
  /// Nonpositive samples whose 10-step stencil crosses a piece boundary.
  std::size_t near_interface = 0;
  bool exceptions_localized() const { return near_interface == nonpositive.size(); }
};

/// Central-difference Jacobian determinants at seeded uniform points.
JacobianSurvey jacobian_survey(const StageMap& f, std::size_t count, double fd_step,
                               std::uint64_t seed);

struct BoundaryReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::size_t samples = 0;
};

/// Samples every face of the cube; passes iff max |f(x) - x|_inf <= 1e-12.
BoundaryReport boundary_identity_check(const StageMap& f, int per_face, std::uint64_t seed);

struct InjectivityReport {
  std::size_t samples = 0;
  std::size_t collisions = 0;  // distinct points with images closer than tol
  double min_image_gap = 0.0;
};

InjectivityReport injectivity_probe(const StageMap& f, std::size_t count, double tol,
                                    std::uint64_t seed);

/// Largest sampled |f(x) - f(y)| / |x - y| over pairs at distance <= scale.
double lipschitz_quotient(const StageMap& f, std::size_t pairs, double scale, std::uint64_t seed);

struct CollapseReport {
  int stage = 0;
  std::size_t samples = 0;
  double image_diameter = 0.0;  // of f_L on points of stage-k C_A cells
  double lipschitz = 0.0;       // largest sampled quotient over the cube
};

/// FL stage k: images of `samples` points drawn uniformly from random stage-k
/// cells of C_A (the FL source schedule), plus `samples` Lipschitz pairs at
/// scale 0.05.
CollapseReport fl_collapse(int n, double beta, int k, std::size_t samples, std::uint64_t seed);

}  // namespace sobolev_cantor
