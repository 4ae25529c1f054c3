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

#include <vector>

#include "sobolev_cantor/geometry.hpp"
#include "sobolev_cantor/stage_map.hpp"

namespace sobolev_cantor {

/// tau: vertex letter -> tower slot letter. The identity under the letter encoding.
int slot_correspondence(int n, int vertex_letter);
Vec slot_correspondence(const Vec& vertex);

/// Moves a cube of half-width rho by delta along one axis. The move is a
/// translation on the cube, the identity outside the corridor box, and
/// piecewise linear in between. All coordinates are normalized
/// to the parent cell [-1,1]^n.
class Slide {
 public:
  Slide(int axis, Vec center, double delta, double rho, double margin);
  /// margins(i) is the ramp width across axis i; margins(axis) pads both ends.
  Slide(int axis, Vec center, double delta, double rho, Vec margins);

  int axis() const { return axis_; }
  const Vec& center() const { return center_; }
  double delta() const { return delta_; }
  double margin(int i) const { return margins_(i); }
  const Vec& margins() const { return margins_; }
  double rho() const { return rho_; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }

  /// Returns false (and leaves x alone) when x is outside the corridor.
  bool forward(Vec& x) const;
  bool inverse(Vec& y) const;
  /// Jacobian at x; identity outside the corridor.
  Mat derivative(const Vec& x) const;
  /// 0 outside the corridor, otherwise a small code for the linear piece.
  int piece(const Vec& x) const;

 private:
  enum class Zone { Behind, Band, Ahead };
  Zone zone(double xa, double w) const;
  bool in_box(const Vec& x) const;
  double weight(const Vec& x, int* arg = nullptr, double* dweight = nullptr) const;

  int axis_;
  Vec center_;
  double delta_;
  double rho_;
  Vec margins_;
  Vec lo_;
  Vec hi_;
};

/// A quarter of the smallest gap between child cubes of one cell.
double relocation_margin(int n, double beta);

/// One cube's path from its grid position to its tower slot.
struct RelocationMove {
  int letter = 0;
  Vec source;  // normalized center before the move
  Vec target;  // normalized center after the move
  std::vector<Slide> slides;
};

/// Relocation table for one cell, shared by every level since rho does not
/// depend on the level.
std::vector<RelocationMove> build_relocation_moves(int n, double beta);

/// Stage-k map L_k from C_B onto the Cantor tower, L_k = Lambda_k o ... o Lambda_1.
class TowerMap final : public StageMap {
 public:
  TowerMap(int n, double beta, int k);

  int dim() const override { return n_; }
  int stage() const { return k_; }
  double beta() const { return beta_; }
  double rho() const { return rho_; }
  /// Smallest corridor margin; corridors with room to spare use wider ones.
  double margin() const { return margin_; }
  const std::vector<RelocationMove>& moves() const { return moves_; }

  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;

  /// Derivative of the inverse map at y.
  Mat inverse_derivative(const Vec& y) const;

  /// One rearrangement level in normalized cell coordinates. Optionally
  /// accumulates the Jacobian and the piece signature.
  Vec rearrange(const Vec& xi, Mat* jac = nullptr, std::uint64_t* sig = nullptr) const;

 private:
  // Applies one rearrangement level in normalized coordinates.
  bool apply_level(Vec& xi, Mat* jac, std::uint64_t* sig) const;
  bool unapply_level(Vec& xi) const;

  int n_;
  double beta_;
  int k_;
  double rho_;
  double margin_;
  CantorConstruction tower_;
  std::vector<RelocationMove> moves_;
};

struct GoodmapReport {
  std::vector<bool> level_pass;  // index i = level i (0 included)
  std::vector<int> cells_checked;
  bool all() const;
};

/// Checks that L_k^{-1} maps sampled points of every tower cell of level i <= k
/// into the matching cell of C_B.
GoodmapReport verify_goodmap(const TowerMap& l, int samples_per_cell, std::uint64_t seed);

}  // namespace sobolev_cantor
