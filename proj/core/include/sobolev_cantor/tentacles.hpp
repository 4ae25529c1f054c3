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
#include <vector>

#include "sobolev_cantor/geometry.hpp"
#include "sobolev_cantor/stage_map.hpp"

namespace sobolev_cantor {

/// Four knots (t_i, s_i), strictly increasing in both coordinates.
struct PLKnots {
  std::array<double, 4> t{};
  std::array<double, 4> s{};

  bool monotone() const;
};

/// Three-piece linear interpolant through the knots. Throws DomainError
/// outside [t_1, t_4].
double pl_interpolate(double t, const PLKnots& knots);
/// Inverse of pl_interpolate in t.
double pl_invert(double s, const PLKnots& knots);
/// Index of the piece (0, 1, 2) containing t.
int pl_piece(double t, const PLKnots& knots);

enum class TentacleFamily { Squeeze, Stretch };
enum class ScheduleMode { Strict, Demo };

/// Constants of one tentacle level. Radii b, d are kept in log form.
struct TentacleLevel {
  int k = 0;
  double r_hat = 0.0;       // tower half-width at this level
  double r_hat_prev = 0.0;  // tower half-width one level up
  double a = 0.0, c = 0.0;
  double a_tilde = 0.0, c_tilde = 0.0;
  double A = 0.0;      // bending amplitude of the second knot (A_k or A~_k)
  double Delta = 0.0;  // lambda on the thin core |x_perp| <= b
  LogMagnitude b, d;
  double delta = 0.0;        // energy budget per tentacle (strict mode)
  double delta_tilde = 0.0;  // energy budget for the whole level (strict mode)
  double c_geom = 0.0;
  double c_fixd = 0.0;
  std::array<double, 4> t{};   // axial knots
  std::array<double, 4> s0{};  // knot values at lambda = 0
  std::array<double, 4> ds{};  // d s / d lambda
  double line_x = 0.0;         // the boundary line passes (r_hat, r_hat) and (line_x, line_y)
  double line_y = 0.0;

  /// End of the axial domain of P'_k (c_k or c~_k).
  double domain_end() const { return t[3]; }
  /// End of the axial image of P'_k.
  double image_end() const { return s0[3]; }
  PLKnots knots(double lambda) const;
};

/// Tentacle constants for levels 1..k_max of one family.
class TentacleParams {
 public:
  static TentacleParams solve(int n, double beta, TentacleFamily family, ScheduleMode mode,
                              int k_max);
  /// Solves level k given levels 1..k-1 in `previous`.
  static TentacleLevel solve_level(int k, const TentacleParams& previous);

  int n() const { return n_; }
  double beta() const { return beta_; }
  TentacleFamily family() const { return family_; }
  ScheduleMode mode() const { return mode_; }
  int k_max() const { return static_cast<int>(levels_.size()); }
  const TentacleLevel& level(int k) const;

  double r_hat(int k) const;
  double a(int k) const;
  /// Boundary line l_k (squeeze) or l~_k (stretch); l_0 is the identity.
  double line(int k, double t) const;
  /// lambda_k as a function of u = log(1/|x_perp|_inf), clamped to [0, Delta_k].
  double lambda_from_u(int k, double u) const;
  double lambda_from_radius(int k, double r) const;
  /// d lambda / d r at radius r (zero on the core and outside the shell).
  double dlambda_dr(int k, double r) const;

 private:
  TentacleParams(int n, double beta, TentacleFamily family, ScheduleMode mode);

  int n_;
  double beta_;
  TentacleFamily family_;
  ScheduleMode mode_;
  std::vector<TentacleLevel> levels_;
};

/// u = log(1/d_k) with 2^{(beta+1)k(n-1)} / u^{n-2} = C_fixd delta_k, given
/// log(C_fixd delta_k). Throws UnsupportedDimension for n = 2.
double strict_log_radius(int n, double beta, int k, double log_fixd_delta);

/// Closed form c_geom 2^{(beta+1)k(n-1)} (u_d^{2-n} - u_b^{2-n})/(n-2) for the
/// singular part of the tentacle energy. Throws UnsupportedDimension for n = 2.
double tentacle_seminorm_bound(const TentacleParams& p, int k);
/// Smooth remainder 2^{q-1} |P'_k| (n-1 + slope_max^2)^q of the energy bound.
double tentacle_bulk_bound(const TentacleParams& p, int k);
/// Reference value of the integral of |DH^S_k|_F^{n-1} over P'_k by tensor
/// Gauss-Legendre in (x_1, log log(1/r)).
double tentacle_energy_reference(const TentacleParams& p, int k, int order = 12);
/// log of 2^{nk}(d_k^{n-1} c_k 2^{n-1} + (2 r_hat_k)^n).
double tentacle_union_log_measure(const TentacleParams& p, int k);

/// Straight tentacle map H^S_k on [-1,1]^n.
class StraightTentacleMap final : public StageMap {
 public:
  StraightTentacleMap(TentacleParams params, int k);
  int dim() const override { return params_.n(); }
  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;
  /// Deepest level j <= k whose P'_j contains x, or 0.
  int level_of(const Vec& x) const;

 private:
  TentacleParams params_;
  int k_;
};

/// Shifting map S_{v^(k)} for one tower word: x_n -> x_n - sum_l sigma_l(x_1).
class ShiftMap final : public StageMap {
 public:
  ShiftMap(TentacleParams params, std::vector<int> word);
  int dim() const override { return params_.n(); }
  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;

  /// Total shift sum_l sigma_l(t).
  double shift(double t) const;

 private:
  TentacleParams params_;
  std::vector<int> word_;
};

/// Global twisted tentacle map h_k (squeeze) or h~_k (stretch) on [-1,1]^n.
class TentacleMap final : public StageMap {
 public:
  TentacleMap(TentacleParams params, int k);

  int dim() const override { return params_.n(); }
  int stage() const { return k_; }
  const TentacleParams& params() const { return params_; }

  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;

  /// Offset of the level-|word| chart along the last axis at axial position t:
  /// a point with chart coordinates u sits at (u_1, u_2, ..., u_n + offset).
  double chart_offset(const std::vector<int>& word, double t) const;
  double chart_offset_slope(const std::vector<int>& word, double t) const;
  Vec chart_to_point(const std::vector<int>& word, const Vec& u) const;
  /// Applies the level-|word| tentacle map (or its inverse) to chart point u
  /// and returns the image in chart coordinates. The point is assumed to lie
  /// in that tentacle and in no deeper one.
  Vec chart_forward(const std::vector<int>& word, const Vec& u) const;
  Vec chart_inverse(const std::vector<int>& word, const Vec& u) const;

  /// Word and chart coordinates of the deepest tentacle T'_{v^(j)}, j <= k,
  /// containing x (image tentacles when `image` is set). Empty word if none.
  struct Hit {
    std::vector<int> word;
    Vec u;
    bool in_shell = false;  // in P' rather than in the tower cube
  };
  Hit find(const Vec& x, bool image) const;

  /// True if x lies in some P'_{v^(k)} of the top level (domain side).
  bool in_top_shell(const Vec& x) const;

 private:
  double ramp_weight(int l, double t, double* slope) const;

  TentacleParams params_;
  int k_;
};

}  // namespace sobolev_cantor
