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
#include <memory>
#include <vector>

#include "sobolev_cantor/types.hpp"

namespace sobolev_cantor {

/// A piecewise-analytic bijection of [-1,1]^n.
class StageMap {
 public:
  virtual ~StageMap() = default;

  virtual int dim() const = 0;
  virtual Vec eval(const Vec& x) const = 0;
  /// Throws DomainError for maps without an inverse.
  virtual Vec inverse(const Vec& y) const = 0;
  /// Analytic derivative; undefined (but finite) on interface sets.
  virtual Mat derivative(const Vec& x) const = 0;
  /// Identifies the smooth piece containing x. Two points with the same
  /// signature are joined by a region where the formula does not change.
  virtual std::uint64_t piece(const Vec& /*x*/) const { return 0; }
};

using StageMapPtr = std::shared_ptr<const StageMap>;

/// Mixes v into a running 64-bit hash.
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v ^= v >> 30;
  v *= 0xbf58476d1ce4e5b9ULL;
  v ^= v >> 27;
  v *= 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return h ^ v;
}

class IdentityMap final : public StageMap {
 public:
  explicit IdentityMap(int n) : n_(n) {}
  int dim() const override { return n_; }
  Vec eval(const Vec& x) const override { return x; }
  Vec inverse(const Vec& y) const override { return y; }
  Mat derivative(const Vec& /*x*/) const override { return Mat::Identity(n_, n_); }

 private:
  int n_;
};

/// x -> A x + b.
class AffineMap final : public StageMap {
 public:
  AffineMap(Mat a, Vec b);
  int dim() const override { return static_cast<int>(b_.size()); }
  Vec eval(const Vec& x) const override { return a_ * x + b_; }
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& /*x*/) const override { return a_; }

 private:
  Mat a_;
  Mat a_inv_;
  Vec b_;
};

/// Applies the factors left to right; each factor may enter inverted.
class MapChain final : public StageMap {
 public:
  struct Factor {
    StageMapPtr map;
    bool inverted = false;
  };

  explicit MapChain(std::vector<Factor> factors);
  int dim() const override { return factors_.front().map->dim(); }
  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;

  /// Image of x after each factor (size = factors + 1, front = x).
  std::vector<Vec> trace(const Vec& x) const;
  const std::vector<Factor>& factors() const { return factors_; }

 private:
  std::vector<Factor> factors_;
};

/// Swaps the roles of eval and inverse.
class InverseMap final : public StageMap {
 public:
  explicit InverseMap(StageMapPtr inner) : inner_(std::move(inner)) {}
  int dim() const override { return inner_->dim(); }
  Vec eval(const Vec& x) const override { return inner_->inverse(x); }
  Vec inverse(const Vec& y) const override { return inner_->eval(y); }
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override { return inner_->piece(inner_->inverse(x)); }

 private:
  StageMapPtr inner_;
};

/// Central-difference derivative with step h.
Mat finite_difference_jacobian(const StageMap& f, const Vec& x, double h);

}  // namespace sobolev_cantor
