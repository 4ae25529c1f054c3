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

#include <cmath>
#include <functional>
#include <vector>

#include "sobolev_cantor/types.hpp"

namespace sobolev_cantor::testing {

using Field = std::function<Vec(const Vec&)>;

inline Mat central_jacobian(const Field& f, const Vec& x, double h = 1e-6) {
  const int n = static_cast<int>(x.size());
  Mat j(n, n);
  for (int c = 0; c < n; ++c) {
    Vec p = x, m = x;
    p(c) += h;
    m(c) -= h;
    j.col(c) = (f(p) - f(m)) / (2 * h);
  }
  return j;
}

/// Sum of sgn det Df over the preimages of y in the open ball B(a, r).
/// Newton runs from a grid of seeds over the bounding cube of the ball;
/// roots closer than 1e-7 are merged. Only for smooth maps with regular y.
inline int signed_preimages(const Field& f, const Vec& a, double r, const Vec& y,
                            int seeds_per_axis = 11) {
  const int n = static_cast<int>(a.size());
  std::vector<Vec> roots;
  std::vector<int> index(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      x(i) = a(i) + r * (-1.0 + 2.0 * (index[static_cast<std::size_t>(i)] + 0.5) / seeds_per_axis);
    }
    for (int it = 0; it < 60; ++it) {
      const Vec res = f(x) - y;
      if (res.norm() < 1e-13) break;
      const Mat j = central_jacobian(f, x);
      if (std::abs(j.determinant()) < 1e-14) break;
      x -= j.fullPivLu().solve(res);
      if (!x.allFinite() || (x - a).norm() > 4 * r) break;
    }
    if (x.allFinite() && (f(x) - y).norm() < 1e-10 && (x - a).norm() < r) {
      bool seen = false;
      for (const Vec& root : roots) seen = seen || (root - x).norm() < 1e-7;
      if (!seen) roots.push_back(x);
    }
    int d = 0;
    while (d < n && ++index[static_cast<std::size_t>(d)] == seeds_per_axis) {
      index[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
  }
  int count = 0;
  for (const Vec& root : roots) count += central_jacobian(f, root).determinant() > 0 ? 1 : -1;
  return count;
}

struct Fixture {
  const char* name;
  Field f;
  int n;
};

inline std::vector<Fixture> smooth_fixtures() {
  Mat swap = Mat::Zero(3, 3);
  swap << 0, 1, 0, 1, 0, 0, 0, 0, 2;
  Vec shift = Vec::Zero(3);
  shift(0) = 0.1;
  return {
      {"identity", [](const Vec& x) { return x; }, 3},
      {"antipodal", [](const Vec& x) -> Vec { return -x; }, 3},
      {"scale2", [](const Vec& x) -> Vec { return 2.0 * x; }, 3},
      {"affine_reversing", [swap, shift](const Vec& x) -> Vec { return swap * x + shift; }, 3},
      {"planar_square",
       [](const Vec& x) {
         Vec y(2);
         y << x(0) * x(0) - x(1) * x(1), 2.0 * x(0) * x(1);
         return y;
       },
       2},
  };
}

}  // namespace sobolev_cantor::testing
