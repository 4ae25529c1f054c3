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

#include "sobolev_cantor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sobolev_cantor {

ParameterSchedule::ParameterSchedule(int n, double beta, ScheduleKind kind)
    : n_(n), beta_(beta), kind_(kind) {
  if (n < 2 || n > kMaxDim) {
    throw UnsupportedDimension("dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
}

ParameterSchedule ParameterSchedule::kind_a(int n, double beta) {
  return ParameterSchedule(n, beta, ScheduleKind::A);
}

ParameterSchedule ParameterSchedule::kind_b(int n, double beta) {
  return ParameterSchedule(n, beta, ScheduleKind::B);
}

ParameterSchedule ParameterSchedule::custom(int n, double beta, std::vector<double> alpha,
                                            double limit) {
  if (alpha.empty() || alpha[0] != 1.0) {
    throw std::invalid_argument("custom schedule needs alpha[0] = 1");
  }
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0) || !(alpha[i] < alpha[i - 1])) {
      throw std::invalid_argument("custom alpha must be positive and strictly decreasing");
    }
  }
  ParameterSchedule s(n, beta, ScheduleKind::Custom);
  s.custom_alpha_ = std::move(alpha);
  s.custom_limit_ = limit;
  return s;
}

ParameterSchedule ParameterSchedule::harmonic(int n, double beta, int levels) {
  std::vector<double> alpha(static_cast<std::size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k) alpha[static_cast<std::size_t>(k)] = 1.0 / (k + 1);
  return custom(n, beta, std::move(alpha), 0.0);
}

double ParameterSchedule::alpha(int k) const {
  if (k < 0) throw std::out_of_range("negative level");
  switch (kind_) {
    case ScheduleKind::A:
      return 0.5 * (1.0 + std::exp2(-k * beta_));
    case ScheduleKind::B:
      return std::exp2(-k * beta_);
    case ScheduleKind::Custom:
      if (k >= static_cast<int>(custom_alpha_.size())) {
        throw std::out_of_range("custom schedule defined up to level " +
                                std::to_string(custom_alpha_.size() - 1));
      }
      return custom_alpha_[static_cast<std::size_t>(k)];
  }
  return 0.0;
}

double ParameterSchedule::alpha_limit() const {
  switch (kind_) {
    case ScheduleKind::A:
      return 0.5;
    case ScheduleKind::B:
      return 0.0;
    case ScheduleKind::Custom:
      return custom_limit_;
  }
  return 0.0;
}

double ParameterSchedule::r(int k) const { return std::ldexp(alpha(k), -k); }

double ParameterSchedule::r_outer(int k) const {
  if (k == 0) return alpha(0);
  return std::ldexp(alpha(k - 1), -k);
}

int ParameterSchedule::max_level() const {
  if (kind_ == ScheduleKind::Custom) return static_cast<int>(custom_alpha_.size()) - 1;
  return std::numeric_limits<int>::max();
}

std::pair<double, double> schedule_radii(const ParameterSchedule& s, int k) {
  if (k < 0) throw std::out_of_range("negative level");
  return {s.r(k), s.r_outer(k)};
}

double stage_measure(const ParameterSchedule& s, int k) {
  return std::pow(2.0 * s.alpha(k), s.n());
}

double limit_measure(const ParameterSchedule& s) {
  return std::pow(2.0 * s.alpha_limit(), s.n());
}

double frame_measure(const ParameterSchedule& s, int k) {
  return std::pow(2.0 * s.r_outer(k), s.n()) - std::pow(2.0 * s.r(k), s.n());
}

Address Address::parent() const {
  if (word.empty()) throw InvalidAddress("root address has no parent");
  Address a{construction, word};
  a.word.pop_back();
  return a;
}

Address Address::child(int letter) const {
  Address a{construction, word};
  a.word.push_back(letter);
  return a;
}

namespace {

void check_letter(int n, int letter) {
  if (letter < 0 || letter >= (1 << n)) {
    throw InvalidAddress("letter " + std::to_string(letter) + " outside alphabet of size " +
                         std::to_string(1 << n));
  }
}

double slot_height(int n, int letter) {
  return -1.0 + std::ldexp(2.0 * letter + 1.0, -n);
}

}  // namespace

Vec vertex_of(Construction c, int n, int letter) {
  check_letter(n, letter);
  Vec v = Vec::Zero(n);
  if (c == Construction::TowerB) {
    v(n - 1) = slot_height(n, letter);
    return v;
  }
  for (int i = 0; i < n; ++i) {
    const int bit = (letter >> (n - 1 - i)) & 1;
    v(i) = bit ? 1.0 : -1.0;
  }
  return v;
}

int letter_of(Construction c, const Vec& vertex) {
  const int n = static_cast<int>(vertex.size());
  if (c == Construction::TowerB) {
    for (int i = 0; i + 1 < n; ++i) {
      if (vertex(i) != 0.0) throw InvalidAddress("tower vertex must lie on the last axis");
    }
    const double j = (vertex(n - 1) + 1.0) * std::ldexp(1.0, n - 1) - 0.5;
    const int letter = static_cast<int>(std::lround(j));
    if (letter < 0 || letter >= (1 << n) || slot_height(n, letter) != vertex(n - 1)) {
      throw InvalidAddress("not a tower slot");
    }
    return letter;
  }
  int letter = 0;
  for (int i = 0; i < n; ++i) {
    if (vertex(i) == 1.0) {
      letter |= 1 << (n - 1 - i);
    } else if (vertex(i) != -1.0) {
      throw InvalidAddress("vertex coordinates must be +-1");
    }
  }
  return letter;
}

bool CubeSpec::contains(const Vec& x) const {
  for (int i = 0; i < x.size(); ++i) {
    const double d = x(i) - center(i);
    if (d < -half_width || d >= half_width) return false;
  }
  return true;
}

CantorConstruction::CantorConstruction(Construction c, ParameterSchedule schedule)
    : construction_(c), schedule_(std::move(schedule)) {}

double CantorConstruction::inner_half_width(int k) const { return schedule_.r(k); }

double CantorConstruction::outer_half_width(int k) const {
  if (construction_ == Construction::TowerB && k >= 1) {
    return std::ldexp(schedule_.r(k - 1), -n());
  }
  return schedule_.r_outer(k);
}

Vec CantorConstruction::child_center(const Vec& parent, int k, int letter) const {
  Vec v = vertex_of(construction_, n(), letter);
  const double scale = construction_ == Construction::TowerB ? schedule_.r(k - 1)
                                                             : 0.5 * schedule_.r(k - 1);
  return parent + scale * v;
}

Vec CantorConstruction::center(const std::vector<int>& word) const {
  Vec z = Vec::Zero(n());
  for (std::size_t j = 0; j < word.size(); ++j) {
    z = child_center(z, static_cast<int>(j) + 1, word[j]);
  }
  return z;
}

Vec CantorConstruction::center(const Address& a) const {
  if (a.construction != construction_) throw InvalidAddress("address of another construction");
  return center(a.word);
}

CubeSpec CantorConstruction::cube(const Address& a, CubeRole role) const {
  const int k = a.level();
  CubeSpec c;
  c.center = center(a);
  c.half_width = role == CubeRole::Inner ? inner_half_width(k) : outer_half_width(k);
  c.role = role;
  return c;
}

int CantorConstruction::child_letter(const Vec& parent, int k, const Vec& x) const {
  const int dim = n();
  if (construction_ == Construction::TowerB) {
    const double spacing = std::ldexp(2.0 * schedule_.r(k - 1), -dim);
    const double f = std::floor((x(dim - 1) - parent(dim - 1)) / spacing +
                                std::ldexp(1.0, dim - 1));
    const double hi = std::ldexp(1.0, dim) - 1.0;
    return static_cast<int>(std::clamp(f, 0.0, hi));
  }
  int letter = 0;
  for (int i = 0; i < dim; ++i) {
    if (x(i) >= parent(i)) letter |= 1 << (dim - 1 - i);
  }
  return letter;
}

Location CantorConstruction::locate(const Vec& x, int max_level) const {
  if (max_level < 1) throw std::invalid_argument("max_level must be >= 1");
  Location loc;
  loc.deepest.construction = construction_;
  Vec z = Vec::Zero(n());
  for (int k = 1; k <= max_level; ++k) {
    const int letter = child_letter(z, k, x);
    const Vec zc = child_center(z, k, letter);
    if (construction_ == Construction::TowerB) {
      CubeSpec outer{zc, outer_half_width(k), CubeRole::Outer};
      if (!outer.contains(x)) {
        loc.zone = Zone::Outside;
        loc.level = k - 1;
        return loc;
      }
    }
    loc.deepest.word.push_back(letter);
    CubeSpec inner{zc, inner_half_width(k), CubeRole::Inner};
    if (!inner.contains(x)) {
      loc.zone = Zone::Frame;
      loc.level = k;
      return loc;
    }
    z = zc;
  }
  loc.zone = Zone::Core;
  loc.level = max_level;
  return loc;
}

Vec cell_center(const ParameterSchedule& s, const Address& a) {
  return CantorConstruction(a.construction, s).center(a);
}

LogMagnitude LogMagnitude::from_value(double value) {
  if (!(value > 0.0) || value > 1.0) {
    throw std::invalid_argument("log magnitude needs a value in (0, 1]");
  }
  return LogMagnitude(-std::log(value));
}

LogMagnitude LogMagnitude::from_u(double u) {
  if (!(u >= 0.0)) throw std::invalid_argument("log magnitude needs u >= 0");
  return LogMagnitude(u);
}

double LogMagnitude::loglog() const { return std::log(u_); }

double LogMagnitude::value() const { return std::exp(-u_); }

LogMagnitude LogMagnitude::pow(double p) const { return LogMagnitude(u_ * p); }

LogMagnitude LogMagnitude::times(double factor) const {
  const double u = u_ - std::log(factor);
  if (!(u >= 0.0)) throw std::domain_error("log magnitude product exceeds 1");
  return LogMagnitude(u);
}

bool LogMagnitude::exceeds(double r) const {
  if (r <= 0.0) return true;
  return u_ < -std::log(r);
}

}  // namespace sobolev_cantor
