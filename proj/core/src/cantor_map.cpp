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

#include "sobolev_cantor/cantor_map.hpp"

#include <algorithm>
#include <cmath>

namespace sobolev_cantor {

namespace {

// Index of the largest |d_i|, first one on ties.
int argmax_abs(const Vec& d) {
  int m = 0;
  double best = std::abs(d(0));
  for (int i = 1; i < d.size(); ++i) {
    const double a = std::abs(d(i));
    if (a > best) {
      best = a;
      m = i;
    }
  }
  return m;
}

bool on_cube_boundary(const Vec& x) {
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) >= 1.0) return true;
  }
  return false;
}

}  // namespace

Vec AnnulusMap::forward(const Vec& x) const {
  const Vec d = x - source_center;
  const double t = sup_norm(d);
  return target_center + (lambda(t) / t) * d;
}

Vec AnnulusMap::inverse(const Vec& y) const {
  const Vec d = y - target_center;
  const double tau = sup_norm(d);
  const double t = source_outer - (target_outer - tau) / slope();
  return source_center + (t / tau) * d;
}

Mat AnnulusMap::derivative(const Vec& x) const {
  const Vec d = x - source_center;
  const int n = static_cast<int>(d.size());
  const int m = argmax_abs(d);
  const double t = std::abs(d(m));
  const double sgn = d(m) >= 0.0 ? 1.0 : -1.0;
  const double lam = lambda(t);
  const double mu = lam / t;
  const double dmu = (slope() * t - lam) / (t * t);
  Mat j = mu * Mat::Identity(n, n);
  j.col(m) += dmu * sgn * d;
  return j;
}

CantorHomeomorphism::CantorHomeomorphism(int n, double beta, int k)
    : CantorHomeomorphism(ParameterSchedule::kind_a(n, beta), ParameterSchedule::kind_b(n, beta),
                          k) {}

CantorHomeomorphism::CantorHomeomorphism(ParameterSchedule source, ParameterSchedule target,
                                         int k)
    : source_(std::move(source)), target_(std::move(target)), k_(k) {
  if (source_.n() != target_.n()) throw std::invalid_argument("schedule dimensions differ");
  if (k < 0) throw std::invalid_argument("stage must be >= 0");
  if (k > source_.max_level() || k > target_.max_level()) {
    throw std::invalid_argument("stage beyond schedule length");
  }
}

CantorHomeomorphism::Region CantorHomeomorphism::find(const Vec& p, bool in_target) const {
  const int n = dim();
  const ParameterSchedule& here = in_target ? target_ : source_;
  Region reg;
  reg.z = Vec::Zero(n);
  reg.zt = Vec::Zero(n);
  for (int i = 1; i <= k_; ++i) {
    const Vec& c = in_target ? reg.zt : reg.z;
    int letter = 0;
    for (int j = 0; j < n; ++j) {
      if (p(j) >= c(j)) letter |= 1 << (n - 1 - j);
    }
    const Vec v = vertex_of(Construction::SetA, n, letter);
    reg.z += (0.5 * source_.r(i - 1)) * v;
    reg.zt += (0.5 * target_.r(i - 1)) * v;
    reg.address_hash = hash_mix(reg.address_hash, static_cast<std::uint64_t>(letter));
    CubeSpec inner{in_target ? reg.zt : reg.z, here.r(i), CubeRole::Inner};
    if (!inner.contains(p)) {
      reg.level = i;
      return reg;
    }
  }
  reg.level = k_;
  reg.core = true;
  return reg;
}

AnnulusMap CantorHomeomorphism::annulus(const Region& reg) const {
  const int i = reg.level;
  return AnnulusMap{reg.z,           reg.zt,           source_.r(i), source_.r_outer(i),
                    target_.r(i), target_.r_outer(i)};
}

Vec CantorHomeomorphism::eval(const Vec& x) const {
  if (k_ == 0 || on_cube_boundary(x)) return x;
  const Region reg = find(x, false);
  if (reg.core) return reg.zt + (target_.r(k_) / source_.r(k_)) * (x - reg.z);
  return annulus(reg).forward(x);
}

Vec CantorHomeomorphism::inverse(const Vec& y) const {
  if (k_ == 0 || on_cube_boundary(y)) return y;
  const Region reg = find(y, true);
  if (reg.core) return reg.z + (source_.r(k_) / target_.r(k_)) * (y - reg.zt);
  return annulus(reg).inverse(y);
}

Mat CantorHomeomorphism::derivative(const Vec& x) const {
  const int n = dim();
  if (k_ == 0) return Mat::Identity(n, n);
  const Region reg = find(x, false);
  if (reg.core) return (target_.r(k_) / source_.r(k_)) * Mat::Identity(n, n);
  return annulus(reg).derivative(x);
}

Mat CantorHomeomorphism::inverse_derivative(const Vec& y) const {
  const int n = dim();
  if (k_ == 0) return Mat::Identity(n, n);
  const Region reg = find(y, true);
  if (reg.core) return (source_.r(k_) / target_.r(k_)) * Mat::Identity(n, n);
  const AnnulusMap a = annulus(reg);
  const AnnulusMap inv{a.target_center, a.source_center, a.target_inner,
                       a.target_outer,  a.source_inner,  a.source_outer};
  return inv.derivative(y);
}

std::uint64_t CantorHomeomorphism::piece(const Vec& x) const {
  if (k_ == 0) return 0;
  const Region reg = find(x, false);
  std::uint64_t h = hash_mix(reg.address_hash, static_cast<std::uint64_t>(reg.level));
  h = hash_mix(h, reg.core ? 1u : 2u);
  if (!reg.core) {
    const Vec d = x - reg.z;
    const int m = argmax_abs(d);
    h = hash_mix(h, static_cast<std::uint64_t>(2 * m + (d(m) >= 0.0 ? 1 : 0)));
  }
  return h;
}

double g_derivative_bound(const ParameterSchedule& a, const ParameterSchedule& b,
                          Pairing pairing, int i) {
  if (i < 1) throw std::invalid_argument("frame level must be >= 1");
  const double ai = a.alpha(i), ap = a.alpha(i - 1);
  const double bi = b.alpha(i), bp = b.alpha(i - 1);
  if (pairing == Pairing::Forward) return std::max(bi / ai, (bp - bi) / (ap - ai));
  return std::max(ai / bi, (ap - ai) / (bp - bi));
}

double g_derivative_bound(Pairing pairing, double beta, int i) {
  return g_derivative_bound(ParameterSchedule::kind_a(3, beta), ParameterSchedule::kind_b(3, beta),
                            pairing, i);
}

}  // namespace sobolev_cantor
