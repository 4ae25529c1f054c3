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

#include "sobolev_cantor/parallel.hpp"

#include <atomic>

namespace sobolev_cantor {

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned worker_count() {
  const unsigned w = g_workers.load();
  if (w != 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(unsigned n) { g_workers.store(n); }

double pairwise_sum(const double* v, std::size_t count) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

}  // namespace sobolev_cantor
