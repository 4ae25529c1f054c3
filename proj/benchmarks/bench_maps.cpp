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

#include <benchmark/benchmark.h>

#include "sobolev_cantor/analysis.hpp"
#include "sobolev_cantor/degree.hpp"
#include "sobolev_cantor/random.hpp"

namespace sc = sobolev_cantor;

namespace {

std::vector<sc::Vec> points(std::size_t count, std::uint64_t seed) {
  const sc::CounterRng rng(seed);
  std::vector<sc::Vec> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(rng.point(i, 3));
  return out;
}

void BM_CompositeEval(benchmark::State& state) {
  const sc::CompositeStage f(sc::Variant::T1, 3, 4.0, static_cast<int>(state.range(0)));
  const auto xs = points(4096, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.eval(xs[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CompositeEval)->DenseRange(1, 4);

void BM_CompositeInverse(benchmark::State& state) {
  const sc::CompositeStage f(sc::Variant::T2, 3, 4.0, static_cast<int>(state.range(0)));
  const auto xs = points(4096, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.inverse(xs[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CompositeInverse)->DenseRange(1, 4);

void BM_CompositeDerivative(benchmark::State& state) {
  const sc::CompositeStage f(sc::Variant::T1, 3, 4.0, 3);
  const auto xs = points(4096, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.derivative(xs[i++ & 4095]));
  }
}
BENCHMARK(BM_CompositeDerivative);

void BM_TowerMapEval(benchmark::State& state) {
  const sc::TowerMap l(3, 4.0, static_cast<int>(state.range(0)));
  const auto xs = points(4096, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l.eval(xs[i++ & 4095]));
  }
}
BENCHMARK(BM_TowerMapEval)->DenseRange(1, 4);

void BM_Locate(benchmark::State& state) {
  const sc::CantorConstruction c(sc::Construction::SetA, sc::ParameterSchedule::kind_a(3, 4.0));
  const auto xs = points(4096, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.locate(xs[i++ & 4095], 8));
  }
}
BENCHMARK(BM_Locate);

void BM_DegreeSolidAngle(benchmark::State& state) {
  const sc::CompositeStage f(sc::Variant::T1, 3, 4.0, 2);
  sc::Vec center(3);
  center << -0.5, 0.5, 0.0;
  const sc::ImageSphere sphere([&f](const sc::Vec& x) { return f.eval(x); },
                               sc::SphereProbe{center, 0.3, 4});
  const int level = static_cast<int>(state.range(0));
  sphere.images(level);
  const sc::Vec y = f.eval(center);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere.raw(level, y));
  }
}
BENCHMARK(BM_DegreeSolidAngle)->DenseRange(3, 6);

void BM_JacobianSurvey(benchmark::State& state) {
  const sc::CompositeStage f(sc::Variant::T1, 3, 4.0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::jacobian_survey(f, 1000, 1e-7, 1));
  }
}
BENCHMARK(BM_JacobianSurvey)->Unit(benchmark::kMillisecond);

void BM_TentacleShellIntegral(benchmark::State& state) {
  const auto p = sc::TentacleParams::solve(3, 4.0, sc::TentacleFamily::Squeeze, sc::ScheduleMode::Demo, 1);
  const sc::TentacleLevel& l = p.level(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sc::cauchy_tentacle_integral(sc::Variant::T1, 3, 4.0, 1, {7}, l.r_hat, l.domain_end(), 4, 0));
  }
}
BENCHMARK(BM_TentacleShellIntegral)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
