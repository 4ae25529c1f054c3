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

#include "../support/preimage_oracle.hpp"
#include "sobolev_cantor/composite.hpp"
#include "sobolev_cantor/degree.hpp"
#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {
namespace {

using sobolev_cantor::testing::signed_preimages;
using sobolev_cantor::testing::smooth_fixtures;

Vec v3(double a, double b, double c) {
  Vec x(3);
  x << a, b, c;
  return x;
}

PointMap identity() {
  return [](const Vec& x) { return x; };
}

TEST(Degree, IdentityInsideAndOutside) {
  const SphereProbe s{Vec::Zero(3), 1.0, 4};
  const DegreeReport in = degree(identity(), s, Vec::Zero(3));
  EXPECT_EQ(in.degree, 1);
  EXPECT_NEAR(in.raw, 1.0, 1e-12);
  EXPECT_GT(in.distance, 0.9);
  EXPECT_EQ(degree(identity(), s, v3(2, 0, 0)).degree, 0);
}

TEST(Degree, Antipodal) {
  const PointMap f = [](const Vec& x) -> Vec { return -x; };
  EXPECT_EQ(degree(f, SphereProbe{Vec::Zero(3), 1.0, 4}, Vec::Zero(3)).degree, -1);
}

TEST(Degree, PlanarWinding) {
  const PointMap rot = [](const Vec& x) {
    Vec y(2);
    y << -x(1), x(0);
    return y;
  };
  EXPECT_EQ(degree(rot, SphereProbe{Vec::Zero(2), 1.0, 4}, Vec::Zero(2)).degree, 1);
  Vec far(2);
  far << 3.0, 0.0;
  EXPECT_EQ(degree(rot, SphereProbe{Vec::Zero(2), 1.0, 4}, far).degree, 0);
}

TEST(Degree, MatchesSignedPreimageOracle) {
  const CounterRng rng(77);
  for (const auto& fx : smooth_fixtures()) {
    const Vec a = Vec::Zero(fx.n);
    for (std::uint64_t i = 0; i < 6; ++i) {
      const Vec y = fx.f(rng.point(i, fx.n, -0.6, 0.6));
      const int oracle = signed_preimages(fx.f, a, 1.0, y);
      const DegreeReport d = degree(fx.f, SphereProbe{a, 1.0, 4}, y);
      EXPECT_EQ(d.degree, oracle) << fx.name << " sample " << i;
    }
  }
}

TEST(Degree, HistoryIsStableAtAcceptance) {
  const DegreeSettings settings;
  const DegreeReport d = degree(identity(), SphereProbe{Vec::Zero(3), 1.0, 4}, v3(0.2, 0.1, 0));
  ASSERT_GE(d.history.size(), static_cast<std::size_t>(settings.stable_steps + 1));
  const std::size_t last = d.history.size() - 1;
  EXPECT_LT(std::abs(d.history[last] - d.history[last - 1]), settings.stability);
  EXPECT_LT(std::abs(d.raw - d.degree), settings.snap);
}

TEST(Degree, PointOnImageIsIndeterminate) {
  EXPECT_THROW(degree(identity(), SphereProbe{Vec::Zero(3), 1.0, 4}, v3(1, 0, 0)),
               IndeterminateDegree);
}

TEST(Degree, ImageSphereMeshIsClosed) {
  const ImageSphere s(identity(), SphereProbe{Vec::Zero(3), 1.0, 2});
  // Closed oriented surface: the solid angle sum is 1 inside and 0 outside
  // at every level.
  for (int level = 0; level <= 4; ++level) {
    EXPECT_NEAR(s.raw(level, Vec::Zero(3)), 1.0, 1e-12);
    EXPECT_NEAR(s.raw(level, v3(0, 0, 3)), 0.0, 1e-12);
    EXPECT_LT(s.resolution(level + 1), s.resolution(level));
  }
}

TEST(InvCheck, IdentityBall) {
  const IdentityMap id(3);
  const InvReport r = inv_check(id, Vec::Zero(3), 0.5, 20, 20, 1);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.inside, 20u);
  EXPECT_EQ(r.outside, 20u);
  EXPECT_FALSE(r.radius_perturbed);
  EXPECT_EQ(degree(id, SphereProbe{Vec::Zero(3), 0.5, 4}, Vec::Zero(3)).degree, 1);
  EXPECT_EQ(degree(id, SphereProbe{Vec::Zero(3), 0.5, 4}, v3(0.9, 0, 0)).degree, 0);
}

TEST(InvCheck, FirstStageHomeomorphism) {
  const CompositeStage f(Variant::T1, 3, 4.0, 1);
  const InvReport r = inv_check(f, v3(-0.5, 0.5, 0.0), 0.3, 10, 10, 2);
  EXPECT_TRUE(r.pass());
}

TEST(DegreeStability, FirstTwoStages) {
  const Vec a = v3(-0.5, 0.5, 0.0);
  const Vec y = CompositeStage(Variant::T1, 3, 4.0, 1).eval(a);
  const StabilityReport s =
      degree_stability(Variant::T1, 3, 4.0, 1, 2, SphereProbe{a, 0.3, 4}, y);
  EXPECT_TRUE(s.constant());
  ASSERT_EQ(s.reports.size(), 2u);
  EXPECT_EQ(s.reports[0].degree, 1);
}

TEST(TopologicalImage, NestingAndDisjointnessForIdentity) {
  const IdentityMap id(3);
  const SphereProbe small{Vec::Zero(3), 0.1, 3}, large{Vec::Zero(3), 0.3, 3};
  const TopologicalImageProbe nest = nesting_probe(id, small, large, 64);
  EXPECT_EQ(nest.violations, 0u);
  EXPECT_GT(nest.judged, 0u);
  const SphereProbe other{v3(0.5, 0, 0), 0.2, 3};
  EXPECT_EQ(disjoint_probe(id, small, other, 64).violations, 0u);
}

}  // namespace
}  // namespace sobolev_cantor
