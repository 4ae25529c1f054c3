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

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace sobolev_cantor {

/// Number of worker threads; 0 or unset means hardware concurrency.
unsigned worker_count();
void set_worker_count(unsigned n);

/// Runs body(i) for i in [0, count) on the worker pool. Chunks are assigned by
/// index, so results written per index do not depend on the thread count.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

/// Pairwise (tree) sum; the order depends only on the input length.
double pairwise_sum(const double* v, std::size_t count);

/// Sum of term(i) over [0, count). Terms are summed in fixed blocks and the
/// block sums are combined pairwise, so the result is bit-identical for any
/// number of workers.
template <class Term>
double parallel_sum(std::size_t count, Term term, std::size_t block = 1024) {
  const std::size_t blocks = (count + block - 1) / block;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(count, lo + block);
    std::vector<double> local(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) local[i - lo] = term(i);
    partial[b] = pairwise_sum(local.data(), local.size());
  });
  return pairwise_sum(partial.data(), partial.size());
}

}  // namespace sobolev_cantor
