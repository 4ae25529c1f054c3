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

#include <cmath>

#include <gtest/gtest.h>

#include "sobolev_cantor/random.hpp"
#include "sobolev_cantor/tentacles.hpp"

namespace sobolev_cantor {
namespace {

PLKnots example_knots() {
  PLKnots k;
  k.t = {0, 1, 2, 3};
  k.s = {0, 2, 3, 4};
  return k;
}

TEST(PiecewiseLinear, Examples) {
  const PLKnots k = example_knots();
  EXPECT_DOUBLE_EQ(pl_interpolate(0.5, k), 1.0);
  EXPECT_DOUBLE_EQ(pl_interpolate(2.5, k), 3.5);
  EXPECT_DOUBLE_EQ(pl_interpolate(0.0, k), 0.0);
  EXPECT_DOUBLE_EQ(pl_interpolate(3.0, k), 4.0);
  EXPECT_EQ(pl_piece(2.5, k), 2);
}

TEST(PiecewiseLinear, InverseAndDomain) {
  const PLKnots k = example_knots();
  for (double t = 0.0; t <= 3.0; t += 0.125) EXPECT_NEAR(pl_invert(pl_interpolate(t, k), k), t, 1e-15);
  EXPECT_THROW(pl_interpolate(-0.1, k), DomainError);
  EXPECT_THROW(pl_interpolate(3.1, k), DomainError);
}

TEST(TentacleParams, DemoFirstLevel) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 3);
  const TentacleLevel& l = p.level(1);
  EXPECT_EQ(l.a, 0.998992919921875);
  EXPECT_EQ(l.a, 1.0 - std::ldexp(1.0, -10) - std::ldexp(1.0, -15));
  EXPECT_EQ(l.a_tilde, 0.0625);
  EXPECT_NEAR(l.Delta, 0.936493, 1e-6);
  EXPECT_NEAR(l.d.value(), 0.05, 1e-15);
  EXPECT_NEAR(l.b.loglog(), std::log(std::log(20.0)) + l.Delta, 1e-9);
  EXPECT_NEAR(l.b.loglog(), 2.03368, 1e-5);
  EXPECT_NEAR(l.b.value(), 4.795e-4, 1e-6);
}

TEST(TentacleParams, ConsecutiveLevelsShareKnot) {
  for (auto family : {TentacleFamily::Squeeze, TentacleFamily::Stretch}) {
    for (auto mode : {ScheduleMode::Demo, ScheduleMode::Strict}) {
      const auto p = TentacleParams::solve(3, 4.0, family, mode, 4);
      for (int k = 2; k <= 4; ++k) EXPECT_EQ(p.level(k).c, p.level(k - 1).a);
    }
  }
}

TEST(TentacleParams, StrictRadiusRelation) {
  // 2^{(beta+1)k(n-1)} / u_d = C delta with n - 2 = 1.
  EXPECT_NEAR(strict_log_radius(3, 4.0, 1, std::log(1e-3)), 1.024e6, 1e-6);
  EXPECT_THROW(strict_log_radius(2, 4.0, 1, std::log(1e-3)), UnsupportedDimension);
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Strict, 2);
  const TentacleLevel& l = p.level(1);
  EXPECT_NEAR(std::exp2(10.0) / l.d.u(), l.c_fixd * l.delta, 1e-12 * l.c_fixd * l.delta);
}

TEST(TentacleParams, StrictBoundBelowBudget) {
  for (auto family : {TentacleFamily::Squeeze, TentacleFamily::Stretch}) {
    const auto p = TentacleParams::solve(3, 4.0, family, ScheduleMode::Strict, 8);
    for (int k = 1; k <= 8; ++k) {
      EXPECT_LE(tentacle_seminorm_bound(p, k), p.level(k).delta);
      EXPECT_LT(p.level(k).b.u(), INFINITY);
      EXPECT_GT(p.level(k).b.u(), p.level(k).d.u());
    }
  }
}

TEST(TentacleParams, KnotsMonotoneAcrossShell) {
  for (auto family : {TentacleFamily::Squeeze, TentacleFamily::Stretch}) {
    const auto p = TentacleParams::solve(3, 4.0, family, ScheduleMode::Demo, 4);
    for (int k = 1; k <= 4; ++k) {
      const TentacleLevel& l = p.level(k);
      for (int i = 0; i <= 64; ++i) EXPECT_TRUE(l.knots(l.Delta * i / 64.0).monotone());
    }
  }
}

TEST(TentacleParams, SqueezeBoundaryValues) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1);
  const TentacleLevel& l = p.level(1);
  // On |x_perp| = d the third knot is l_0(a_1) = a_1; on the core it is a~_1.
  EXPECT_DOUBLE_EQ(l.knots(0.0).s[2], l.a);
  EXPECT_DOUBLE_EQ(l.knots(l.Delta).s[2], 0.0625);
  EXPECT_DOUBLE_EQ(p.lambda_from_radius(1, 0.05), 0.0);
  EXPECT_DOUBLE_EQ(p.lambda_from_radius(1, 1e-5), l.Delta);
}

TEST(TentacleParams, StretchCoreSendsATildeToA) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Stretch, ScheduleMode::Demo, 1);
  const TentacleLevel& l = p.level(1);
  EXPECT_DOUBLE_EQ(pl_interpolate(l.a_tilde, l.knots(l.Delta)), l.a);
}

TEST(TentacleBound, EmptyShellGivesZeroAndNeedsThreeDimensions) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1);
  EXPECT_GT(tentacle_seminorm_bound(p, 1), 0.0);
  EXPECT_THROW(TentacleParams::solve(2, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1),
               UnsupportedDimension);
}

TEST(ShiftMap, FullShiftBranch) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 2);
  const ShiftMap s(p, {0, 7});
  Vec x(3);
  x << 0.5, 0.0, 0.2;
  const double b1 = std::exp(-p.level(1).b.u());
  EXPECT_NEAR(s.eval(x)(2), 0.2 - (0.03125 - b1) * 0.875, 1e-15);
  EXPECT_NEAR(s.eval(x)(2), 0.173076, 1e-6);
  x(0) = std::ldexp(1.0, -10);
  EXPECT_EQ(s.eval(x), x);
  x(0) = 0.03125;
  EXPECT_NEAR(s.shift(x(0)), (0.03125 - b1) * 0.875, 1e-15);
  EXPECT_DOUBLE_EQ(s.derivative(x).determinant(), 1.0);
}

class TentacleMapTest : public ::testing::TestWithParam<std::tuple<TentacleFamily, int>> {};

TEST_P(TentacleMapTest, RoundTripAndTransverseIdentity) {
  const auto [family, k] = GetParam();
  const TentacleMap h(TentacleParams::solve(3, 4.0, family, ScheduleMode::Demo, k), k);
  const CounterRng rng(40 + k);
  for (std::uint64_t i = 0; i < 4000; ++i) {
    // Half the samples near the tentacle axis, where the map is not trivial.
    Vec x = rng.point(i, 3);
    if (i % 2) x(1) *= 0.05, x(0) = std::abs(x(0));
    const Vec y = h.eval(x);
    EXPECT_EQ(y(1), x(1));
    EXPECT_LE((h.inverse(y) - x).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST_P(TentacleMapTest, AgreesWithPreviousStageOutsideTopShells) {
  const auto [family, k] = GetParam();
  const auto p = TentacleParams::solve(3, 4.0, family, ScheduleMode::Demo, k);
  const TentacleMap h(p, k), prev(p, k - 1);
  const CounterRng rng(50 + k);
  for (std::uint64_t i = 0; i < 4000; ++i) {
    Vec x = rng.point(i, 3);
    x(0) = std::abs(x(0));
    x(1) *= 0.05;
    if (h.in_top_shell(x)) continue;
    EXPECT_LE((h.eval(x) - prev.eval(x)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

INSTANTIATE_TEST_SUITE_P(Stages, TentacleMapTest,
                         ::testing::Combine(::testing::Values(TentacleFamily::Squeeze,
                                                              TentacleFamily::Stretch),
                                            ::testing::Values(1, 2, 3)));

TEST(TentacleMap, IdentityOnTowerCube) {
  const TentacleMap h(TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1), 1);
  const CounterRng rng(9);
  for (std::uint64_t i = 0; i < 500; ++i) {
    Vec x = rng.point(i, 3, -0.999 / 32, 0.999 / 32);
    x(2) += 7.0 / 8.0;
    EXPECT_EQ(h.eval(x), x);
  }
}

TEST(TentacleMap, DerivativeMatchesFiniteDifferences) {
  const TentacleMap h(TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 2), 2);
  const CounterRng rng(12);
  int checked = 0;
  for (std::uint64_t i = 0; i < 4000; ++i) {
    Vec x = rng.point(i, 3);
    x(0) = std::abs(x(0));
    x(1) *= 0.05;
    const double step = 1e-8;
    bool smooth = true;
    for (int j = 0; j < 3 && smooth; ++j) {
      for (double s : {-1.0, 1.0}) {
        Vec y = x;
        y(j) += 10 * s * step;
        smooth = smooth && h.piece(y) == h.piece(x);
      }
    }
    if (!smooth) continue;
    ++checked;
    const Mat a = h.derivative(x);
    EXPECT_LE((a - finite_difference_jacobian(h, x, step)).norm(), 1e-6 * std::max(1.0, a.norm()));
  }
  EXPECT_GT(checked, 3000);
}

TEST(StraightTentacle, MatchesReferenceEnergyOrder) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1);
  const double ref = tentacle_energy_reference(p, 1);
  EXPECT_GT(ref, 0.0);
  EXPECT_LE(ref, tentacle_seminorm_bound(p, 1) + tentacle_bulk_bound(p, 1));
}

TEST(TentacleUnion, MeasureShrinks) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Strict, 8);
  for (int k = 2; k <= 8; ++k) {
    EXPECT_LT(tentacle_union_log_measure(p, k), tentacle_union_log_measure(p, k - 1));
  }
}

}  // namespace
}  // namespace sobolev_cantor
