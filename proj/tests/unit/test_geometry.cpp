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

#include "sobolev_cantor/geometry.hpp"
#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {
namespace {

Vec v3(double a, double b, double c) {
  Vec x(3);
  x << a, b, c;
  return x;
}

TEST(ScheduleRadii, KindAFirstLevel) {
  const auto a = ParameterSchedule::kind_a(3, 4.0);
  const auto [r, r_outer] = schedule_radii(a, 1);
  EXPECT_DOUBLE_EQ(r, 17.0 / 64.0);
  EXPECT_DOUBLE_EQ(r_outer, 0.5);
}

TEST(ScheduleRadii, LevelZeroIsWholeCube) {
  for (const auto& s : {ParameterSchedule::kind_a(3, 4.0), ParameterSchedule::kind_b(3, 4.0)}) {
    const auto [r, r_outer] = schedule_radii(s, 0);
    EXPECT_EQ(r, 1.0);
    EXPECT_EQ(r_outer, 1.0);
  }
}

TEST(ScheduleRadii, KindBSecondLevel) {
  const auto [r, r_outer] = schedule_radii(ParameterSchedule::kind_b(3, 4.0), 2);
  EXPECT_DOUBLE_EQ(r, std::ldexp(1.0, -10));
  EXPECT_DOUBLE_EQ(r_outer, std::ldexp(1.0, -6));
}

TEST(CellCenter, Examples) {
  const auto a = ParameterSchedule::kind_a(3, 4.0);
  EXPECT_TRUE(cell_center(a, Address{Construction::SetA, {7}}).isApprox(v3(0.5, 0.5, 0.5)));
  EXPECT_EQ(cell_center(a, Address{Construction::SetA, {}}), Vec::Zero(3));
  const CantorConstruction tower(Construction::TowerB, ParameterSchedule::kind_b(3, 4.0));
  EXPECT_TRUE(tower.center(std::vector<int>{0}).isApprox(v3(0.0, 0.0, -7.0 / 8.0)));
}

TEST(CellCenter, RejectsLettersOutsideAlphabet) {
  const auto a = ParameterSchedule::kind_a(3, 4.0);
  EXPECT_THROW(cell_center(a, Address{Construction::SetA, {8}}), InvalidAddress);
  EXPECT_THROW(cell_center(a, Address{Construction::SetA, {-1}}), InvalidAddress);
}

TEST(Locate, FramePoint) {
  const CantorConstruction c(Construction::SetA, ParameterSchedule::kind_a(3, 4.0));
  const Location loc = c.locate(v3(0.1, 0.1, 0.1), 5);
  EXPECT_EQ(loc.zone, Zone::Frame);
  EXPECT_EQ(loc.level, 1);
  EXPECT_EQ(loc.deepest.word, std::vector<int>({7}));
}

// (0.5, 0.5, 0.5) is the center of cell 7 but the shared corner of its eight
// children, so it ends in the frame of child 7.
TEST(Locate, CellCenterIsCornerOfChildren) {
  const CantorConstruction c(Construction::SetA, ParameterSchedule::kind_a(3, 4.0));
  const Location loc = c.locate(v3(0.5, 0.5, 0.5), 3);
  EXPECT_EQ(loc.zone, Zone::Frame);
  EXPECT_EQ(loc.level, 2);
  EXPECT_EQ(loc.deepest.word, std::vector<int>({7, 7}));
  const Location inner = c.locate(c.center({7, 7, 7}), 3);
  EXPECT_EQ(inner.zone, Zone::Core);
  EXPECT_EQ(inner.level, 3);
}

TEST(Locate, TowerPointFarFromAxisIsOutside) {
  const CantorConstruction c(Construction::TowerB, ParameterSchedule::kind_b(3, 4.0));
  EXPECT_EQ(c.locate(v3(0.9, 0.9, 0.9), 5).zone, Zone::Outside);
}

TEST(Locate, CellCentersRoundTrip) {
  const CantorConstruction c(Construction::SetA, ParameterSchedule::kind_a(3, 4.0));
  const CounterRng rng(3);
  for (std::uint64_t i = 0; i < 50; ++i) {
    std::vector<int> word;
    for (int k = 0; k < 4; ++k) word.push_back(static_cast<int>(rng.bits(i * 4 + k) % 8));
    const Location loc = c.locate(c.center(word), 4);
    EXPECT_EQ(loc.zone, Zone::Core);
    EXPECT_EQ(loc.deepest.word, word);
  }
}

TEST(Locate, ChildOuterCubesTileParentInnerCube) {
  const CantorConstruction c(Construction::SetA, ParameterSchedule::kind_a(3, 4.0));
  const Address parent{Construction::SetA, {3}};
  const CubeSpec inner = c.cube(parent, CubeRole::Inner);
  const CounterRng rng(17);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Vec x = inner.center + inner.half_width * rng.point(i, 3);
    int owners = 0;
    for (int letter = 0; letter < 8; ++letter) {
      owners += c.cube(parent.child(letter), CubeRole::Outer).contains(x) ? 1 : 0;
    }
    EXPECT_EQ(owners, 1) << "sample " << i;
  }
}

TEST(Locate, TotalOnHalfOpenCube) {
  const CantorConstruction c(Construction::SetB, ParameterSchedule::kind_b(3, 4.0));
  const CounterRng rng(5);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Location loc = c.locate(rng.point(i, 3), 6);
    EXPECT_NE(loc.zone, Zone::Outside);
  }
}

TEST(StageMeasure, Examples) {
  const auto a = ParameterSchedule::kind_a(3, 4.0);
  EXPECT_NEAR(stage_measure(a, 1), 8.0 * std::pow(17.0 / 32.0, 3), 1e-15);
  EXPECT_DOUBLE_EQ(limit_measure(a), 1.0);
  EXPECT_EQ(limit_measure(ParameterSchedule::kind_b(3, 4.0)), 0.0);
}

TEST(StageMeasure, DecreasesToLimit) {
  const auto a = ParameterSchedule::kind_a(3, 4.0);
  // Strict until the gap to 1 drops below one ulp (k = 14).
  for (int k = 1; k <= 13; ++k) EXPECT_LT(stage_measure(a, k), stage_measure(a, k - 1));
  for (int k = 14; k <= 20; ++k) EXPECT_LE(stage_measure(a, k), stage_measure(a, k - 1));
  EXPECT_NEAR(stage_measure(a, 20), limit_measure(a), 1e-12);
}

TEST(StageMeasure, FrameMeasureClosesTheGap) {
  const auto a = ParameterSchedule::kind_a(3, 4.0);
  const auto [r, r_outer] = schedule_radii(a, 2);
  EXPECT_DOUBLE_EQ(frame_measure(a, 2), std::pow(2 * r_outer, 3) - std::pow(2 * r, 3));
}

TEST(LogMagnitude, ExtremeValuesStayInLogForm) {
  const LogMagnitude d = LogMagnitude::from_u(1.024e6);
  EXPECT_EQ(d.value(), 0.0);
  EXPECT_DOUBLE_EQ(d.loglog(), std::log(1.024e6));
  EXPECT_TRUE(d.pow(2.0) < d);
  EXPECT_FALSE(d.exceeds(1e-300));
  EXPECT_TRUE(LogMagnitude::from_value(0.05).exceeds(0.04));
}

}  // namespace
}  // namespace sobolev_cantor
