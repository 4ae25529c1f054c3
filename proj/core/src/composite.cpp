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

#include "sobolev_cantor/composite.hpp"

#include <algorithm>
#include <cmath>

namespace sobolev_cantor {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::T1: return "T1";
    case Variant::T2: return "T2";
    case Variant::W: return "W";
    case Variant::FL: return "FL";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "T1") return Variant::T1;
  if (s == "T2") return Variant::T2;
  if (s == "W") return Variant::W;
  if (s == "FL") return Variant::FL;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

// ---------------------------------------------------------------------------

CollapseMap::CollapseMap(int n, double delta) : n_(n), delta_(delta) {
  if (n < 2) throw UnsupportedDimension("collapse map needs n >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("blend width must be in (0,1)");
}

double CollapseMap::blend(const Vec& x, int* arg, double* slope) const {
  int m = 0;
  double s = std::abs(x(0));
  for (int i = 1; i < n_; ++i) {
    if (std::abs(x(i)) > s) {
      s = std::abs(x(i));
      m = i;
    }
  }
  const double t = (s - (1.0 - delta_)) / delta_;
  if (arg != nullptr) *arg = m;
  if (slope != nullptr) *slope = (t > 0.0 && t < 1.0) ? (x(m) >= 0.0 ? 1.0 : -1.0) / delta_ : 0.0;
  return std::clamp(t, 0.0, 1.0);
}

Vec CollapseMap::eval(const Vec& x) const {
  const double rho = x.head(n_ - 1).norm();
  const double theta = blend(x, nullptr, nullptr);
  Vec y = x;
  y(n_ - 1) += (1.0 - theta) * x(n_ - 1) * (rho - 1.0);
  return y;
}

Vec CollapseMap::inverse(const Vec& /*y*/) const {
  throw DomainError("the collapse map is not injective");
}

Mat CollapseMap::derivative(const Vec& x) const {
  const double rho = x.head(n_ - 1).norm();
  int m = 0;
  double dtheta = 0.0;
  const double theta = blend(x, &m, &dtheta);
  Mat d = Mat::Identity(n_, n_);
  const double xn = x(n_ - 1);
  if (rho > 0.0) {
    for (int i = 0; i + 1 < n_; ++i) d(n_ - 1, i) = (1.0 - theta) * xn * x(i) / rho;
  }
  d(n_ - 1, n_ - 1) = 1.0 + (1.0 - theta) * (rho - 1.0);
  d(n_ - 1, m) -= dtheta * xn * (rho - 1.0);
  return d;
}

std::uint64_t CollapseMap::piece(const Vec& x) const {
  int m = 0;
  const double theta = blend(x, &m, nullptr);
  const int zone = theta <= 0.0 ? 0 : (theta >= 1.0 ? 1 : 2);
  std::uint64_t h = hash_mix(0, static_cast<std::uint64_t>(zone));
  if (zone == 2) h = hash_mix(h, static_cast<std::uint64_t>(2 * m + (x(m) >= 0.0 ? 1 : 0)));
  return h;
}

// ---------------------------------------------------------------------------

namespace {

TentacleParams demo_params(Variant v, int n, double beta, int k) {
  const TentacleFamily fam = v == Variant::T1 ? TentacleFamily::Squeeze : TentacleFamily::Stretch;
  return TentacleParams::solve(n, beta, fam, ScheduleMode::Demo, std::max(k, 1));
}

double collapse_width(int n, double beta) {
  const double top = std::ldexp(1.0, -n) - std::exp2(-(beta + 1.0));
  if (!(top > 0.0)) throw ScheduleInfeasible("tower reaches the cube boundary");
  return std::min(std::ldexp(1.0, -n - 1), 0.5 * top);
}

}  // namespace

CompositeStage::CompositeStage(Variant variant, int n, double beta, int k)
    : variant_(variant), n_(n), beta_(beta), k_(k) {
  if (k < 0) throw std::invalid_argument("stage must be >= 0");
  if (variant != Variant::FL) {
    h_ = std::make_shared<TentacleMap>(demo_params(variant, n, beta, k), k);
  }
  assemble();
}

CompositeStage::CompositeStage(Variant variant, double beta, int k, TentacleParams params)
    : variant_(variant), n_(params.n()), beta_(beta), k_(k) {
  if (variant == Variant::FL) throw std::invalid_argument("FL has no tentacle factor");
  h_ = std::make_shared<TentacleMap>(std::move(params), k);
  assemble();
}

void CompositeStage::assemble() {
  if (variant_ == Variant::FL) {
    g_ = std::make_shared<CantorHomeomorphism>(ParameterSchedule::harmonic(n_, beta_, k_ + 1),
                                               ParameterSchedule::kind_b(n_, beta_), k_);
  } else {
    g_ = std::make_shared<CantorHomeomorphism>(n_, beta_, k_);
  }
  l_ = std::make_shared<TowerMap>(n_, beta_, k_);
  std::vector<MapChain::Factor> f;
  switch (variant_) {
    case Variant::T1:
      f = {{h_, false}, {l_, true}, {g_, true}};
      break;
    case Variant::T2:
      f = {{g_, false}, {l_, false}, {h_, false}, {l_, true}, {g_, true}};
      break;
    case Variant::W:
      f = {{g_, false}, {l_, false}, {h_, true}, {l_, true}, {g_, true}};
      break;
    case Variant::FL:
      f = {{g_, false},
           {l_, false},
           {std::make_shared<CollapseMap>(n_, collapse_width(n_, beta_)), false}};
      break;
  }
  chain_ = std::make_shared<MapChain>(std::move(f));
}

namespace {

void require_cube(const Vec& x) {
  for (int i = 0; i < x.size(); ++i) {
    if (!(std::abs(x(i)) <= 1.0)) throw DomainError("point outside [-1,1]^n");
  }
}

}  // namespace

Vec CompositeStage::eval(const Vec& x) const {
  require_cube(x);
  return chain_->eval(x);
}

Vec CompositeStage::inverse(const Vec& y) const {
  require_cube(y);
  return chain_->inverse(y);
}

Mat CompositeStage::derivative(const Vec& x) const {
  require_cube(x);
  return chain_->derivative(x);
}

std::uint64_t CompositeStage::piece(const Vec& x) const { return chain_->piece(x); }

// ---------------------------------------------------------------------------

ContinuumWitness continuum_witness(const CompositeStage& f, const std::vector<int>& word,
                                   int samples) {
  if (f.variant() == Variant::FL) throw std::invalid_argument("FL has no tentacle witness");
  const int k = f.stage();
  const int n = f.dim();
  if (k < 1) throw std::invalid_argument("witness needs k >= 1");
  if (word.empty()) throw InvalidAddress("empty witness word");
  if (samples < 2) throw std::invalid_argument("witness needs at least two samples");
  ContinuumWitness w;
  w.variant = f.variant();
  w.stage = k;
  for (int i = 0; i < k; ++i) {
    const int letter = word[static_cast<std::size_t>(std::min<int>(i, word.size() - 1))];
    if (letter < 0 || letter >= (1 << n)) throw InvalidAddress("letter out of range");
    w.word.push_back(slot_correspondence(n, letter));
  }
  const TentacleMap& h = *f.tentacles();
  const TentacleParams& p = h.params();
  const double r_hat = p.r_hat(k);
  const double tip = p.a(k) - p.r_hat(k + 2);
  auto back = [&](const Vec& z) { return f.g().inverse(f.tower().inverse(z)); };
  for (int i = 0; i < samples; ++i) {
    Vec u = Vec::Zero(n);
    u(0) = tip * i / (samples - 1);
    const Vec z = h.chart_to_point(w.word, u);
    Vec image_chart = u;
    if (u(0) >= r_hat) {
      image_chart = f.variant() == Variant::T1 ? h.chart_forward(w.word, u)
                                               : h.chart_inverse(w.word, u);
    }
    const Vec hz = h.chart_to_point(w.word, image_chart);
    if (f.variant() == Variant::T1) {
      w.domain.push_back(z);
    } else {
      w.domain.push_back(back(z));
    }
    w.images.push_back(back(hz));
  }
  w.endpoint_distance = (w.domain.front() - w.domain.back()).norm();
  for (std::size_t i = 0; i < w.images.size(); ++i) {
    for (std::size_t j = i + 1; j < w.images.size(); ++j) {
      w.image_diameter = std::max(w.image_diameter, (w.images[i] - w.images[j]).norm());
    }
  }
  Address a{Construction::SetA, {}};
  for (int i = 0; i < k; ++i) {
    a.word.push_back(word[static_cast<std::size_t>(std::min<int>(i, word.size() - 1))]);
  }
  w.cell_center_error = (w.images.front() - cell_center(f.g().source(), a)).norm();
  return w;
}

}  // namespace sobolev_cantor
