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

#include <cstdint>

#include "sobolev_cantor/types.hpp"

namespace sobolev_cantor {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, index), so results do not depend on evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t index) const {
    return splitmix64(splitmix64(seed_ ^ splitmix64(stream_)) + index);
  }

  /// Uniform in [0, 1).
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t index, double lo, double hi) const {
    return lo + (hi - lo) * uniform(index);
  }

  /// Uniform point in [lo, hi]^n; draws indices [index*n, index*n + n).
  Vec point(std::uint64_t index, int n, double lo = -1.0, double hi = 1.0) const {
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      x(i) = uniform(index * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i), lo,
                     hi);
    }
    return x;
  }

  CounterRng substream(std::uint64_t s) const { return CounterRng(seed_, splitmix64(stream_) ^ s); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace sobolev_cantor
