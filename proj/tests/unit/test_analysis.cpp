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
#include "sobolev_cantor/parallel.hpp"
#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {
namespace {

Box cube(double lo, double hi, int n = 3) {
  return Box{Vec::Constant(n, lo), Vec::Constant(n, hi), {}};
}

QuadratureConfig coarse() {
  QuadratureConfig q;
  q.resolution = 4;
  q.refinement_depth = 0;
  return q;
}

TEST(Seminorm, IdentityOnCube) {
  const SeminormReport r = seminorm(IdentityMap(3), 2.0, {cube(-1, 1)}, coarse());
  EXPECT_NEAR(r.value, 24.0, 1e-12);
  EXPECT_NEAR(r.refined, 24.0, 1e-12);
}

TEST(Seminorm, LinearDoubling) {
  const AffineMap f(2.0 * Mat::Identity(3, 3), Vec::Zero(3));
  EXPECT_NEAR(seminorm(f, 2.0, {cube(0, 1)}, coarse()).value, 12.0, 1e-12);
}

TEST(Seminorm, RegionOutsideCubeIsDomainError) {
  EXPECT_THROW(seminorm(IdentityMap(3), 2.0, {cube(0, 1.5)}, coarse()), DomainError);
}

TEST(Seminorm, FiniteDifferenceAgreesWithAnalytic) {
  const CantorHomeomorphism g(3, 4.0, 1);
  QuadratureConfig q = coarse();
  const double analytic = seminorm(g, 2.0, {cube(-1, 1)}, q).value;
  q.fd_relative_step = 1e-6;
  const double fd = seminorm(g, 2.0, {cube(-1, 1)}, q).value;
  EXPECT_NEAR(fd, analytic, 1e-4 * analytic);
}

TEST(Seminorm, TentacleShellMatchesReferenceIntegral) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1);
  const TentacleLevel& l = p.level(1);
  const double d = l.d.value(), b = l.b.value();
  Box shell{Vec(3), Vec(3), {{l.t[1], l.t[2]}, {-b, 0.0, b}, {-b, 0.0, b}}};
  shell.lo << l.r_hat, -d, -d;
  shell.hi << l.domain_end(), d, d;
  QuadratureConfig q;
  q.resolution = 8;
  q.refinement_depth = 3;
  const SeminormReport r = seminorm(StraightTentacleMap(p, 1), 2.0, {shell}, q);
  const double reference = tentacle_energy_reference(p, 1);
  EXPECT_LT(r.relative_change, 0.05);
  EXPECT_NEAR(r.refined, reference, 0.1 * reference);
  // The closed form carries the geometric constants and bounds the integral.
  EXPECT_LE(r.refined, tentacle_seminorm_bound(p, 1));
}

TEST(QuadratureConfig, Validation) {
  QuadratureConfig q;
  q.resolution = 3;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q.resolution = 4;
  q.fd_relative_step = 1e-3;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q.fd_relative_step = 0.0;
  q.time_budget = -1.0;
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(JacobianSurvey, IdentityAndReflection) {
  const JacobianSurvey id = jacobian_survey(IdentityMap(3), 1000, 1e-6, 1);
  EXPECT_EQ(id.fraction, 1.0);
  EXPECT_NEAR(id.min_det, 1.0, 1e-9);
  Mat a = Mat::Identity(3, 3);
  a(0, 0) = -1.0;
  const JacobianSurvey flip = jacobian_survey(AffineMap(a, Vec::Zero(3)), 1000, 1e-6, 1);
  EXPECT_EQ(flip.fraction, 0.0);
}

TEST(JacobianSurvey, SecondStageIsPositive) {
  const JacobianSurvey s = jacobian_survey(CompositeStage(Variant::T1, 3, 4.0, 2), 10000, 1e-7, 3);
  EXPECT_GE(s.fraction, 0.999);
  EXPECT_TRUE(s.exceptions_localized());
}

TEST(JacobianSurvey, Deterministic) {
  const CompositeStage f(Variant::T2, 3, 4.0, 2);
  const JacobianSurvey a = jacobian_survey(f, 2000, 1e-7, 9);
  set_worker_count(1);
  const JacobianSurvey b = jacobian_survey(f, 2000, 1e-7, 9);
  set_worker_count(0);
  EXPECT_EQ(a.min_det, b.min_det);
  EXPECT_EQ(a.positive, b.positive);
}

TEST(BoundaryCheck, StagesPassTranslationFails) {
  EXPECT_TRUE(boundary_identity_check(IdentityMap(3), 100, 1).pass);
  const BoundaryReport t1 = boundary_identity_check(CompositeStage(Variant::T1, 3, 4.0, 3), 200, 1);
  EXPECT_TRUE(t1.pass);
  EXPECT_EQ(t1.max_deviation, 0.0);
  const AffineMap shift(Mat::Identity(3, 3), Vec::Constant(3, 0.1));
  const BoundaryReport bad = boundary_identity_check(shift, 100, 1);
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.max_deviation, 0.1, 1e-15);
}

TEST(ParallelSum, IndependentOfWorkers) {
  auto term = [](std::size_t i) { return 1.0 / (1.0 + static_cast<double>(i)); };
  set_worker_count(1);
  const double one = parallel_sum(100000, term);
  set_worker_count(4);
  const double four = parallel_sum(100000, term);
  set_worker_count(0);
  EXPECT_EQ(one, four);
}

TEST(CauchyTable, TimeBudgetMarksTableIncomplete) {
  QuadratureConfig q = coarse();
  q.time_budget = 1e-9;
  const CauchyTable t = cauchy_table(Variant::T1, 3, 4.0, 2, q);
  EXPECT_FALSE(t.complete);
  EXPECT_FALSE(t.pass());
}

TEST(CauchyTable, TentacleIntegralPositive) {
  const auto p = TentacleParams::solve(3, 4.0, TentacleFamily::Squeeze, ScheduleMode::Demo, 1);
  const TentacleLevel& l = p.level(1);
  const double v = cauchy_tentacle_integral(Variant::T1, 3, 4.0, 1, {7}, l.r_hat, l.domain_end(), 4, 0);
  EXPECT_GT(v, 0.0);
}

TEST(FlCollapse, ShrinksWithBoundedLipschitz) {
  const CollapseReport a = fl_collapse(3, 4.0, 1, 300, 13);
  const CollapseReport b = fl_collapse(3, 4.0, 2, 300, 13);
  EXPECT_LT(2.0 * b.image_diameter, a.image_diameter);
  EXPECT_LE(b.lipschitz, 1.1 * a.lipschitz);
}

}  // namespace
}  // namespace sobolev_cantor
