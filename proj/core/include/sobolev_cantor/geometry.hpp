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
#include <utility>
#include <vector>

#include "sobolev_cantor/types.hpp"

namespace sobolev_cantor {

inline constexpr int kDefaultDepthCap = 24;

enum class ScheduleKind { A, B, Custom };

/// Sequence alpha_k with alpha_0 = 1 and the derived radii
/// r_k = 2^-k alpha_k, r'_k = 2^-k alpha_{k-1}.
class ParameterSchedule {
 public:
  static ParameterSchedule kind_a(int n, double beta);
  static ParameterSchedule kind_b(int n, double beta);
  /// alpha[0] must be 1 and the values strictly decreasing and positive.
  /// `limit` is the value reported by alpha_limit().
  static ParameterSchedule custom(int n, double beta, std::vector<double> alpha, double limit);
  /// alpha_k = 1/(k+1) for k = 0..levels.
  static ParameterSchedule harmonic(int n, double beta, int levels);

  int n() const { return n_; }
  double beta() const { return beta_; }
  ScheduleKind kind() const { return kind_; }

  double alpha(int k) const;
  double alpha_limit() const;
  double r(int k) const;
  double r_outer(int k) const;
  /// Deepest level the schedule is defined for.
  int max_level() const;

 private:
  ParameterSchedule(int n, double beta, ScheduleKind kind);

  int n_;
  double beta_;
  ScheduleKind kind_;
  std::vector<double> custom_alpha_;
  double custom_limit_ = 0.0;
};

std::pair<double, double> schedule_radii(const ParameterSchedule& s, int k);

double stage_measure(const ParameterSchedule& s, int k);
double limit_measure(const ParameterSchedule& s);
double frame_measure(const ParameterSchedule& s, int k);

enum class Construction { SetA, SetB, TowerB };

/// Letters are integers in [0, 2^n). For SetA/SetB a letter encodes the vertex
/// v in {-1,1}^n with big-endian bits b_i = (v_i + 1)/2. For TowerB the letter
/// is j - 1 for the slot (0,...,0,-1+(2j-1)/2^n).
struct Address {
  Construction construction = Construction::SetA;
  std::vector<int> word;

  int level() const { return static_cast<int>(word.size()); }
  Address parent() const;
  Address child(int letter) const;
  bool operator==(const Address& other) const = default;
};

Vec vertex_of(Construction c, int n, int letter);
int letter_of(Construction c, const Vec& vertex);

enum class CubeRole { Inner, Outer };

struct CubeSpec {
  Vec center;
  double half_width = 0.0;
  CubeRole role = CubeRole::Inner;

  bool contains(const Vec& x) const;  // half-open [c - r, c + r) per axis
};

enum class Zone { Frame, Core, Outside };

struct Location {
  Address deepest;
  Zone zone = Zone::Core;
  int level = 0;  // frame level for Frame, depth for Core, depth reached for Outside
};

/// Cell geometry of C_A, C_B or the tower built on a schedule.
class CantorConstruction {
 public:
  CantorConstruction(Construction c, ParameterSchedule schedule);

  Construction construction() const { return construction_; }
  const ParameterSchedule& schedule() const { return schedule_; }
  int n() const { return schedule_.n(); }
  int alphabet_size() const { return 1 << schedule_.n(); }

  double inner_half_width(int k) const;
  double outer_half_width(int k) const;

  /// Center of the child with `letter` of a level-(k-1) cell centered at `parent`.
  Vec child_center(const Vec& parent, int k, int letter) const;
  Vec center(const std::vector<int>& word) const;
  Vec center(const Address& a) const;
  CubeSpec cube(const Address& a, CubeRole role) const;

  /// Letter of the child of the level-(k-1) cell at `parent` whose outer cell
  /// would hold x (the slot for towers, the orthant for grids).
  int child_letter(const Vec& parent, int k, const Vec& x) const;

  Location locate(const Vec& x, int max_level) const;

 private:
  Construction construction_;
  ParameterSchedule schedule_;
};

Vec cell_center(const ParameterSchedule& s, const Address& a);

/// Positive quantity e^{-u} kept as u = log(1/value).
class LogMagnitude {
 public:
  LogMagnitude() = default;
  static LogMagnitude from_value(double value);
  static LogMagnitude from_u(double u);

  double u() const { return u_; }
  /// log log(1/value) = log(u).
  double loglog() const;
  /// e^{-u}; underflows to 0 for u beyond the double range.
  double value() const;
  /// value^p, i.e. u * p.
  LogMagnitude pow(double p) const;
  /// value * factor.
  LogMagnitude times(double factor) const;

  bool operator<(const LogMagnitude& o) const { return u_ > o.u_; }
  bool operator>(const LogMagnitude& o) const { return u_ < o.u_; }
  bool operator<=(const LogMagnitude& o) const { return u_ >= o.u_; }
  bool operator==(const LogMagnitude& o) const = default;

  /// Compares a plain double r with this magnitude without materializing it.
  bool exceeds(double r) const;  // value > r

 private:
  explicit LogMagnitude(double u) : u_(u) {}
  double u_ = 0.0;
};

}  // namespace sobolev_cantor
