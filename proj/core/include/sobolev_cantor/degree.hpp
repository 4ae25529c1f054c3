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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "sobolev_cantor/composite.hpp"
#include "sobolev_cantor/stage_map.hpp"

namespace sobolev_cantor {

using PointMap = std::function<Vec(const Vec&)>;

/// Sphere S(a, r) in n = 2 or 3. For n = 3 the mesh is an octahedron
/// subdivided `level` times and projected radially; for n = 2 it is a polygon
/// with 4 * 2^level vertices.
struct SphereProbe {
  Vec center;
  double radius = 1.0;
  int level = 4;
};

struct DegreeSettings {
  int max_level = 8;
  double snap = 0.2;        // |raw - degree| allowed
  double stability = 0.05;  // |raw change| per refinement
  /// Refinements the raw sum must stay put for. One is not enough near
  /// strongly stretched parts of the image, where a coarse mesh can miss a
  /// fold of the surface on two consecutive levels.
  int stable_steps = 2;
  /// y closer than this to the image mesh counts as on the image.
  double min_distance = 1e-9;
  /// Probes skip y within this distance of the finest image mesh.
  double near_tolerance = 1e-4;
};

struct DegreeReport {
  int degree = 0;
  double raw = 0.0;
  double distance = 0.0;  // from y to the finest image mesh
  std::vector<double> history;  // raw sum per refinement level
  int refinements = 0;
};

/// Images of the sphere mesh under f, built lazily per refinement level, so
/// many y can be tested against one sphere.
class ImageSphere {
 public:
  ImageSphere(PointMap f, SphereProbe probe);

  int dim() const { return static_cast<int>(probe_.center.size()); }
  const SphereProbe& probe() const { return probe_; }

  /// Solid-angle sum / 4 pi (n = 3) or winding number (n = 2) of the level
  /// mesh image around y.
  double raw(int level, const Vec& y) const;
  /// Distance from y to the level mesh image.
  double distance(int level, const Vec& y) const;
  /// Longest image edge at the level.
  double resolution(int level) const;
  /// Images of the level mesh vertices.
  const std::vector<Vec>& images(int level) const { return mesh(level).images; }

  /// Refines until the raw sum is near an integer and stable across
  /// `stable_steps` refinements. Throws IndeterminateDegree when that does
  /// not happen by max_level.
  DegreeReport degree(const Vec& y, const DegreeSettings& settings = {}) const;

 private:
  struct Mesh {
    std::vector<Vec> images;
    std::vector<std::array<int, 3>> faces;  // n = 3
    double longest = 0.0;
  };
  const Mesh& mesh(int level) const;

  PointMap f_;
  SphereProbe probe_;
  mutable std::vector<std::unique_ptr<Mesh>> meshes_;
};

/// deg(f, S(a, r), y).
DegreeReport degree(const PointMap& f, const SphereProbe& probe, const Vec& y,
                    const DegreeSettings& settings = {});
DegreeReport degree(const StageMap& f, const SphereProbe& probe, const Vec& y,
                    const DegreeSettings& settings = {});

struct InvReport {
  std::size_t inside = 0;
  std::size_t outside = 0;
  std::size_t inside_violations = 0;   // deg = 0 away from f(S)
  std::size_t outside_violations = 0;  // deg != 0 away from f(S)
  std::size_t near_sphere = 0;         // within tolerance of f(S), not judged
  double radius = 0.0;                 // radius used, after any perturbation
  bool radius_perturbed = false;
  bool pass() const { return inside_violations == 0 && outside_violations == 0; }
};

/// Samples points of B(a, r) and of the annulus r < |x - a| < 2r (clipped to
/// the cube) and checks that f(x) has nonzero degree exactly for the inside
/// points. If a sample is indeterminate the radius is redrawn within 1%.
InvReport inv_check(const StageMap& f, const Vec& center, double radius, std::size_t inside,
                    std::size_t outside, std::uint64_t seed, const DegreeSettings& settings = {});

struct StabilityReport {
  std::vector<int> stages;
  std::vector<DegreeReport> reports;
  bool constant() const;
};

/// deg(f_k, S, y) for k in [k_lo, k_hi].
StabilityReport degree_stability(Variant variant, int n, double beta, int k_lo, int k_hi,
                                 const SphereProbe& probe, const Vec& y,
                                 const DegreeSettings& settings = {});

struct TopologicalImageProbe {
  std::size_t grid = 0;        // y points tested
  std::size_t judged = 0;      // away from both image spheres
  std::size_t violations = 0;
};

/// For B(a, r) inside B(b, s): on a grid of about `points` y over the image
/// of the small sphere, nonzero degree for the small sphere must imply
/// nonzero degree for the large one.
TopologicalImageProbe nesting_probe(const StageMap& f, const SphereProbe& small,
                                    const SphereProbe& large, std::size_t points,
                                    const DegreeSettings& settings = {});
/// For disjoint balls: no grid point over both images has nonzero degree for
/// both spheres.
TopologicalImageProbe disjoint_probe(const StageMap& f, const SphereProbe& a,
                                     const SphereProbe& b, std::size_t points,
                                     const DegreeSettings& settings = {});

}  // namespace sobolev_cantor
