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

#include "sobolev_cantor/stage_map.hpp"

#include <Eigen/LU>

namespace sobolev_cantor {

AffineMap::AffineMap(Mat a, Vec b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size() || a_.cols() != b_.size()) {
    throw std::invalid_argument("affine map dimensions disagree");
  }
  Eigen::FullPivLU<Mat> lu(a_);
  if (!lu.isInvertible()) throw std::invalid_argument("affine map is singular");
  a_inv_ = lu.inverse();
}

Vec AffineMap::inverse(const Vec& y) const { return a_inv_ * (y - b_); }

MapChain::MapChain(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("empty map chain");
  for (const Factor& f : factors_) {
    if (!f.map) throw std::invalid_argument("null factor in map chain");
    if (f.map->dim() != factors_.front().map->dim()) throw std::invalid_argument("dimension mismatch");
  }
}

Vec MapChain::eval(const Vec& x) const {
  Vec p = x;
  for (const Factor& f : factors_) p = f.inverted ? f.map->inverse(p) : f.map->eval(p);
  return p;
}

Vec MapChain::inverse(const Vec& y) const {
  Vec p = y;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    p = it->inverted ? it->map->eval(p) : it->map->inverse(p);
  }
  return p;
}

std::vector<Vec> MapChain::trace(const Vec& x) const {
  std::vector<Vec> out;
  out.reserve(factors_.size() + 1);
  out.push_back(x);
  for (const Factor& f : factors_) {
    out.push_back(f.inverted ? f.map->inverse(out.back()) : f.map->eval(out.back()));
  }
  return out;
}

Mat MapChain::derivative(const Vec& x) const {
  const int n = dim();
  Mat j = Mat::Identity(n, n);
  Vec p = x;
  for (const Factor& f : factors_) {
    if (f.inverted) {
      const Vec q = f.map->inverse(p);
      j = f.map->derivative(q).inverse() * j;
      p = q;
    } else {
      j = f.map->derivative(p) * j;
      p = f.map->eval(p);
    }
  }
  return j;
}

std::uint64_t MapChain::piece(const Vec& x) const {
  std::uint64_t h = 0;
  Vec p = x;
  for (const Factor& f : factors_) {
    if (f.inverted) {
      p = f.map->inverse(p);
      h = hash_mix(h, f.map->piece(p));
    } else {
      h = hash_mix(h, f.map->piece(p));
      p = f.map->eval(p);
    }
  }
  return h;
}

Mat InverseMap::derivative(const Vec& x) const {
  const Vec p = inner_->inverse(x);
  return inner_->derivative(p).inverse();
}

Mat finite_difference_jacobian(const StageMap& f, const Vec& x, double h) {
  const int n = static_cast<int>(x.size());
  Mat j(n, n);
  for (int i = 0; i < n; ++i) {
    Vec xp = x;
    Vec xm = x;
    xp(i) += h;
    xm(i) -= h;
    j.col(i) = (f.eval(xp) - f.eval(xm)) / (2.0 * h);
  }
  return j;
}

}  // namespace sobolev_cantor
