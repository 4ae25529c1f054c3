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

#include <gtest/gtest.h>

#include "sobolev_cantor/cantor_map.hpp"
#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {
namespace {

Vec v3(double a, double b, double c) {
  Vec x(3);
  x << a, b, c;
  return x;
}

TEST(CantorHomeomorphism, InnerCubeBoundaryScales) {
  const CantorHomeomorphism g(3, 4.0, 1);
  EXPECT_TRUE(g.eval(v3(0.765625, 0.5, 0.5)).isApprox(v3(0.53125, 0.5, 0.5), 1e-15));
}

TEST(CantorHomeomorphism, FramePointInterpolates) {
  const CantorHomeomorphism g(3, 4.0, 1);
  EXPECT_TRUE(g.eval(v3(0.8, 0.5, 0.5)).isApprox(v3(0.6, 0.5, 0.5), 1e-15));
}

TEST(CantorHomeomorphism, RoundTrip) {
  for (int k = 1; k <= 5; ++k) {
    const CantorHomeomorphism g(3, 4.0, k);
    const CounterRng rng(k);
    for (std::uint64_t i = 0; i < 2000; ++i) {
      const Vec x = rng.point(i, 3);
      EXPECT_LE((g.inverse(g.eval(x)) - x).cwiseAbs().maxCoeff(), 1e-10);
    }
    const Vec x = v3(0.3, -0.7, 0.1);
    EXPECT_LE((g.inverse(g.eval(x)) - x).norm(), 1e-14);
  }
}

TEST(CantorHomeomorphism, FixesBoundary) {
  const CantorHomeomorphism g(3, 4.0, 4);
  const CounterRng rng(8);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Vec x = rng.point(i, 3);
    x(static_cast<int>(i % 3)) = (i % 2) ? 1.0 : -1.0;
    EXPECT_EQ(g.eval(x), x);
  }
}

TEST(CantorHomeomorphism, DerivativeMatchesFiniteDifferences) {
  const CantorHomeomorphism g(3, 4.0, 3);
  const CounterRng rng(21);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Vec x = rng.point(i, 3, -0.99, 0.99);
    const double h = 1e-7;
    bool smooth = true;
    for (int j = 0; j < 3 && smooth; ++j) {
      for (double s : {-1.0, 1.0}) {
        Vec y = x;
        y(j) += 10 * s * h;
        smooth = smooth && g.piece(y) == g.piece(x);
      }
    }
    if (!smooth) continue;
    const Mat a = g.derivative(x);
    const Mat fd = finite_difference_jacobian(g, x, h);
    EXPECT_LE((a - fd).norm(), 1e-6 * std::max(1.0, a.norm()));
    EXPECT_GT(a.determinant(), 0.0);
  }
}

TEST(CantorHomeomorphism, InverseDerivativeIsMatrixInverse) {
  const CantorHomeomorphism g(3, 4.0, 2);
  const CounterRng rng(4);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Vec x = rng.point(i, 3);
    const Mat d = g.derivative(x) * g.inverse_derivative(g.eval(x));
    EXPECT_LE((d - Mat::Identity(3, 3)).norm(), 1e-9);
  }
}

TEST(CantorHomeomorphism, AgreesWithNextStageOutsideDeepestCubes) {
  const CantorHomeomorphism g2(3, 4.0, 2), g3(3, 4.0, 3);
  const CantorConstruction a(Construction::SetA, ParameterSchedule::kind_a(3, 4.0));
  const CounterRng rng(6);
  for (std::uint64_t i = 0; i < 3000; ++i) {
    const Vec x = rng.point(i, 3);
    const Location loc = a.locate(x, 2);
    if (loc.zone == Zone::Core && loc.level == 2) continue;
    EXPECT_EQ(g2.eval(x), g3.eval(x));
  }
}

TEST(DerivativeBound, Examples) {
  EXPECT_DOUBLE_EQ(g_derivative_bound(Pairing::Forward, 4.0, 1), 2.0);
  EXPECT_DOUBLE_EQ(g_derivative_bound(Pairing::Inverse, 4.0, 1), 8.5);
}

TEST(DerivativeBound, SampledNormsWithinFactor2n) {
  const int n = 3;
  const CantorConstruction a(Construction::SetA, ParameterSchedule::kind_a(n, 4.0));
  for (int k : {2, 5, 8}) {
    const CantorHomeomorphism g(n, 4.0, k);
    const CounterRng rng(30 + k);
    for (std::uint64_t i = 0; i < 2000; ++i) {
      const Vec x = rng.point(i, n);
      const Location loc = a.locate(x, k);
      if (loc.zone != Zone::Frame) continue;
      const double norm = g.derivative(x).operatorNorm();
      EXPECT_LE(norm, 2 * n * g_derivative_bound(Pairing::Forward, 4.0, loc.level));
    }
  }
}

}  // namespace
}  // namespace sobolev_cantor
