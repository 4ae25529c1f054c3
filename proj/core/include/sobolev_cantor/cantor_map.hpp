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

#include "sobolev_cantor/geometry.hpp"
#include "sobolev_cantor/stage_map.hpp"

namespace sobolev_cantor {

/// Sup-norm radial map of the frame Q(z, r') \ Q(z, r) onto Q(z~, r~') \ Q(z~, r~).
/// x = z + t u with |u|_inf = 1 goes to z~ + lambda(t) u, lambda affine.
struct AnnulusMap {
  Vec source_center;
  Vec target_center;
  double source_inner = 0.0;
  double source_outer = 0.0;
  double target_inner = 0.0;
  double target_outer = 0.0;

  double slope() const {
    return (target_outer - target_inner) / (source_outer - source_inner);
  }
  double lambda(double t) const { return target_outer - slope() * (source_outer - t); }
  Vec forward(const Vec& x) const;
  Vec inverse(const Vec& y) const;
  Mat derivative(const Vec& x) const;
};

/// The stage-k map g_k carrying the k-th iteration of the source Cantor set
/// onto that of the target set: radial on frames, linear on the deepest cubes.
class CantorHomeomorphism final : public StageMap {
 public:
  /// Forward map between the standard pair (kind A, kind B) with exponent beta.
  CantorHomeomorphism(int n, double beta, int k);
  CantorHomeomorphism(ParameterSchedule source, ParameterSchedule target, int k);

  int dim() const override { return source_.n(); }
  int stage() const { return k_; }
  const ParameterSchedule& source() const { return source_; }
  const ParameterSchedule& target() const { return target_; }

  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;

  /// Derivative of the inverse at y, without passing through eval.
  Mat inverse_derivative(const Vec& y) const;

 private:
  struct Region {
    int level = 0;  // frame level, or k for the core
    bool core = false;
    Vec z;
    Vec zt;
    std::uint64_t address_hash = 0;
  };
  Region find(const Vec& p, bool in_target) const;
  AnnulusMap annulus(const Region& reg) const;

  ParameterSchedule source_;
  ParameterSchedule target_;
  int k_;
};

enum class Pairing { Forward, Inverse };

/// Reference envelope for |Dg| on the level-i frame.
double g_derivative_bound(const ParameterSchedule& a, const ParameterSchedule& b,
                          Pairing pairing, int i);
double g_derivative_bound(Pairing pairing, double beta, int i);

}  // namespace sobolev_cantor
