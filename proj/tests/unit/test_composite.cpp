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

#include "sobolev_cantor/analysis.hpp"
#include "sobolev_cantor/composite.hpp"
#include "sobolev_cantor/random.hpp"
#include "sobolev_cantor/tower_map.hpp"

namespace sobolev_cantor {
namespace {

Vec v3(double a, double b, double c) {
  Vec x(3);
  x << a, b, c;
  return x;
}

TEST(Variant, ParsesNames) {
  for (Variant v : {Variant::T1, Variant::T2, Variant::W, Variant::FL}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_variant("T3"), std::invalid_argument);
}

TEST(CompositeStage, CornerIsFixed) {
  for (int k = 1; k <= 4; ++k) {
    const CompositeStage f(Variant::T1, 3, 4.0, k);
    EXPECT_EQ(f.eval(v3(1, 1, 1)), v3(1, 1, 1));
  }
}

// Outside every stage-1 corridor h_1 and L_1 are the identity, so only g_1^-1
// acts: frame offset 0.4 goes back to 0.45.
TEST(CompositeStage, FramePointOfFirstStage) {
  const CompositeStage f(Variant::T1, 3, 4.0, 1);
  EXPECT_TRUE(f.eval(v3(0.9, -0.9, 0.9)).isApprox(v3(0.95, -0.95, 0.95), 1e-15));
}

// The (+,+,+) cell's corridor runs through (0.9, 0.9, 0.9), so L_1 is not
// the identity there.
TEST(CompositeStage, CorridorPointIsMovedByTowerFactor) {
  const CompositeStage f(Variant::T1, 3, 4.0, 1);
  const TowerMap l(3, 4.0, 1);
  const CantorHomeomorphism g(3, 4.0, 1);
  const Vec x = v3(0.9, 0.9, 0.9);
  EXPECT_GT((l.inverse(x) - x).norm(), 1e-3);
  EXPECT_LE((f.eval(x) - g.inverse(l.inverse(x))).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CompositeStage, OutsideCubeIsDomainError) {
  const CompositeStage f(Variant::T1, 3, 4.0, 1);
  EXPECT_THROW(f.eval(v3(1.1, 0, 0)), DomainError);
}

class CompositeRoundTrip : public ::testing::TestWithParam<std::tuple<Variant, int>> {};

TEST_P(CompositeRoundTrip, InverseAfterForward) {
  const auto [variant, k] = GetParam();
  const CompositeStage f(variant, 3, 4.0, k);
  const CounterRng rng(60 + k);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Vec x = rng.point(i, 3);
    EXPECT_LE((f.inverse(f.eval(x)) - x).cwiseAbs().maxCoeff(), 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Stages, CompositeRoundTrip,
                         ::testing::Combine(::testing::Values(Variant::T1, Variant::T2,
                                                              Variant::W),
                                            ::testing::Values(1, 2, 3)));

TEST(CompositeStage, GeneralizedInverse) {
  for (int k = 1; k <= 2; ++k) {
    const CompositeStage t2(Variant::T2, 3, 4.0, k), w(Variant::W, 3, 4.0, k);
    const CounterRng rng(70 + k);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const Vec x = rng.point(i, 3);
      EXPECT_LE((w.eval(t2.eval(x)) - x).norm(), 1e-10);
    }
  }
}

TEST(CompositeStage, InjectiveOnSamples) {
  const CompositeStage f(Variant::T1, 3, 4.0, 2);
  const InjectivityReport r = injectivity_probe(f, 2000, 1e-12, 5);
  EXPECT_EQ(r.collisions, 0u);
}

TEST(CollapseMap, NotInjectiveAndFixesBoundary) {
  const CollapseMap s(3, 1.0 / 16);
  EXPECT_EQ(s.eval(v3(0, 0, 0.3)), s.eval(v3(0, 0, -0.3)));
  EXPECT_EQ(s.eval(v3(1, 0.2, -0.4)), v3(1, 0.2, -0.4));
  EXPECT_THROW(s.inverse(v3(0, 0, 0)), DomainError);
}

TEST(ContinuumWitness, FirstStageGeometry) {
  const CompositeStage f(Variant::T1, 3, 4.0, 1);
  const ContinuumWitness w = continuum_witness(f, {7}, 65);
  EXPECT_TRUE(w.domain.front().isApprox(v3(0, 0, 7.0 / 8.0)));
  EXPECT_GE(w.endpoint_distance, 0.9);
  EXPECT_NEAR(w.domain.back()(0), 0.999, 1e-3);
  const double r1 = schedule_radii(ParameterSchedule::kind_a(3, 4.0), 1).first;
  EXPECT_LE(w.cell_center_error, r1);
  EXPECT_TRUE(w.images.front().isApprox(v3(0.5, 0.5, 0.5)));
}

TEST(ContinuumWitness, ImageDiameterShrinks) {
  for (Variant v : {Variant::T1, Variant::W}) {
    double previous = INFINITY;
    for (int k = 1; k <= 4; ++k) {
      const ContinuumWitness w = continuum_witness(CompositeStage(v, 3, 4.0, k), {7}, 65);
      EXPECT_LT(w.image_diameter, previous) << to_string(v) << " k=" << k;
      EXPECT_GE(w.endpoint_distance, 0.5);
      previous = w.image_diameter;
    }
  }
}

}  // namespace
}  // namespace sobolev_cantor
