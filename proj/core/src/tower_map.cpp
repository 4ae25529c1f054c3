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

#include "sobolev_cantor/tower_map.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {

int slot_correspondence(int n, int vertex_letter) {
  if (vertex_letter < 0 || vertex_letter >= (1 << n)) throw InvalidAddress("invalid vertex");
  return vertex_letter;
}

Vec slot_correspondence(const Vec& vertex) {
  const int n = static_cast<int>(vertex.size());
  return vertex_of(Construction::TowerB, n,
                   slot_correspondence(n, letter_of(Construction::SetA, vertex)));
}

Slide::Slide(int axis, Vec center, double delta, double rho, double margin)
    : Slide(axis, center, delta, rho, Vec::Constant(center.size(), margin)) {}

Slide::Slide(int axis, Vec center, double delta, double rho, Vec margins)
    : axis_(axis), center_(std::move(center)), delta_(delta), rho_(rho), margins_(std::move(margins)) {
  const int n = static_cast<int>(center_.size());
  if (margins_.size() != n || !(margins_.minCoeff() > 0.0)) {
    throw std::invalid_argument("slide margins must be positive, one per axis");
  }
  lo_.resize(n);
  hi_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double w = rho_ + margins_(i);
    if (i == axis_) {
      lo_(i) = std::min(center_(i), center_(i) + delta_) - w;
      hi_(i) = std::max(center_(i), center_(i) + delta_) + w;
    } else {
      lo_(i) = center_(i) - w;
      hi_(i) = center_(i) + w;
    }
  }
}

bool Slide::in_box(const Vec& x) const {
  for (int i = 0; i < x.size(); ++i) {
    if (!(x(i) > lo_(i) && x(i) < hi_(i))) return false;
  }
  return true;
}

// Minimum over transverse axes of the trapezoid profile: 1 within rho of the
// center, 0 at the corridor wall.
double Slide::weight(const Vec& x, int* arg, double* dweight) const {
  double w = 1.0;
  int best = -1;
  double dw = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (i == axis_) continue;
    const double d = x(i) - center_(i);
    const double ad = std::abs(d);
    if (ad <= rho_) continue;
    const double m = margins_(i);
    const double wi = std::max(0.0, (rho_ + m - ad) / m);
    if (wi < w) {
      w = wi;
      best = i;
      dw = (d > 0.0 ? -1.0 : 1.0) / m;
    }
  }
  if (arg) *arg = best;
  if (dweight) *dweight = dw;
  return w;
}

// Along the axis the corridor splits into a translated band, x_a + w delta,
// and two end zones stretched to the full shift. The band boundary runs along
// the diagonal of the (x_a, w) rectangle, so the slide stays piecewise linear.
Slide::Zone Slide::zone(double xa, double w) const {
  const int a = axis_;
  const double t0 = lo_(a), t1 = center_(a) - rho_, t2 = center_(a) + rho_, t3 = hi_(a);
  if (xa < t1 && xa - t0 < (t1 - t0) * w) return Zone::Behind;
  if (xa > t2 && t3 - xa < (t3 - t2) * w) return Zone::Ahead;
  return Zone::Band;
}

bool Slide::forward(Vec& x) const {
  if (!in_box(x)) return false;
  const double w = weight(x);
  if (w <= 0.0) return false;
  const int a = axis_;
  const double t0 = lo_(a), t1 = center_(a) - rho_, t2 = center_(a) + rho_, t3 = hi_(a);
  const double xa = x(a);
  switch (zone(xa, w)) {
    case Zone::Behind:
      x(a) = t0 + (xa - t0) * ((t1 - t0 + delta_) / (t1 - t0));
      break;
    case Zone::Ahead:
      x(a) = t3 - (t3 - xa) * ((t3 - t2 - delta_) / (t3 - t2));
      break;
    case Zone::Band:
      x(a) = xa + w * delta_;
      break;
  }
  return true;
}

bool Slide::inverse(Vec& y) const {
  if (!in_box(y)) return false;
  const double w = weight(y);
  if (w <= 0.0) return false;
  const int a = axis_;
  const double t0 = lo_(a), t1 = center_(a) - rho_, t2 = center_(a) + rho_, t3 = hi_(a);
  const double ya = y(a);
  // Images of the band edges.
  const double lo = t0 + (t1 - t0 + delta_) * w;
  const double hi = t3 - (t3 - t2 - delta_) * w;
  if (ya < lo) {
    y(a) = t0 + (ya - t0) * ((t1 - t0) / (t1 - t0 + delta_));
  } else if (ya > hi) {
    y(a) = t3 - (t3 - ya) * ((t3 - t2) / (t3 - t2 - delta_));
  } else {
    y(a) = ya - w * delta_;
  }
  return true;
}

Mat Slide::derivative(const Vec& x) const {
  const int n = static_cast<int>(x.size());
  Mat j = Mat::Identity(n, n);
  if (!in_box(x)) return j;
  int arg = -1;
  double dw = 0.0;
  const double w = weight(x, &arg, &dw);
  if (w <= 0.0) return j;
  const int a = axis_;
  const double t0 = lo_(a), t1 = center_(a) - rho_, t2 = center_(a) + rho_, t3 = hi_(a);
  switch (zone(x(a), w)) {
    case Zone::Behind:
      j(a, a) = (t1 - t0 + delta_) / (t1 - t0);
      break;
    case Zone::Ahead:
      j(a, a) = (t3 - t2 - delta_) / (t3 - t2);
      break;
    case Zone::Band:
      if (arg >= 0) j(a, arg) = delta_ * dw;
      break;
  }
  return j;
}

int Slide::piece(const Vec& x) const {
  if (!in_box(x)) return 0;
  int arg = -1;
  double dw = 0.0;
  const double w = weight(x, &arg, &dw);
  if (w <= 0.0) return 0;
  const Zone z = zone(x(axis_), w);
  if (z == Zone::Behind) return 1;
  if (z == Zone::Ahead) return 2;
  const int transverse = arg < 0 ? 0 : 1 + 2 * arg + (dw < 0.0 ? 1 : 0);
  return 3 + transverse;
}

double relocation_margin(int n, double beta) {
  return (std::ldexp(1.0, 1 - n) - 2.0 * std::exp2(-beta - 1.0)) / 4.0;
}

namespace {

bool boxes_overlap(const Slide& p, const Slide& q) {
  for (int i = 0; i < p.box_lo().size(); ++i) {
    if (!(p.box_lo()(i) < q.box_hi()(i) && q.box_lo()(i) < p.box_hi()(i))) return false;
  }
  return true;
}

}  // namespace

std::vector<RelocationMove> build_relocation_moves(int n, double beta) {
  const double rho = std::exp2(-beta - 1.0);
  const double base = relocation_margin(n, beta);
  constexpr double kLane = 0.25;  // offset of the inner/outer sub-columns from 1/2
  constexpr double kWide = 0.4;   // margin wherever the neighbours allow it
  if (!(base > 0.0) || !(kLane > 2.0 * (rho + base))) {
    throw ScheduleInfeasible("cubes too large to relocate: need beta >= n + 1");
  }
  struct Leg {
    int axis;
    Vec from;
    double delta;
    Vec cap;  // widest margin per axis that stays inside the cell
  };
  const int count = 1 << n;
  std::vector<RelocationMove> moves(static_cast<std::size_t>(count));
  std::vector<std::vector<Leg>> legs(static_cast<std::size_t>(count));
  for (int letter = 0; letter < count; ++letter) {
    RelocationMove& mv = moves[static_cast<std::size_t>(letter)];
    mv.letter = letter;
    const Vec v = vertex_of(Construction::SetA, n, letter);
    mv.source = 0.5 * v;
    mv.target = vertex_of(Construction::TowerB, n, slot_correspondence(n, letter));
    const double s_hi = vertex_of(Construction::TowerB, n, letter | 1)(n - 1);
    const bool upper_is_inner = s_hi < 0.5;
    const bool is_upper = (letter & 1) != 0;
    const bool inner = is_upper == upper_is_inner;
    const double lane = v(0) * (inner ? 0.5 - kLane : 0.5 + kLane);

    Vec cur = mv.source;
    auto push = [&](int axis, double to) {
      const double delta = to - cur(axis);
      if (delta == 0.0) return;
      // Widest margins that keep the corridor inside the cell.
      Vec cap(n);
      for (int i = 0; i < n; ++i) {
        const double reach = i == axis ? std::max(std::abs(cur(i)), std::abs(to)) : std::abs(cur(i));
        cap(i) = std::max(base, std::min(kWide, 0.9 * (1.0 - reach) - rho));
      }
      legs[static_cast<std::size_t>(letter)].push_back({axis, cur, delta, cap});
      cur(axis) = to;
    };
    push(0, lane);
    push(n - 1, mv.target(n - 1));
    push(0, 0.0);
    for (int i = 1; i + 1 < n; ++i) push(i, 0.0);
  }

  // Corridors of different moves must be disjoint, which they are at the
  // base margin. Widen the steepest ramp, |delta| / margin, first and keep
  // each step only if the corridors stay disjoint.
  for (int m = 0; m < count; ++m) {
    auto& slides = moves[static_cast<std::size_t>(m)].slides;
    for (const Leg& l : legs[static_cast<std::size_t>(m)]) {
      slides.emplace_back(l.axis, l.from, l.delta, rho, Vec::Constant(n, base));
    }
  }
  auto clashes = [&](std::size_t m, std::size_t s) {
    for (std::size_t q = 0; q < moves.size(); ++q) {
      if (q == m) continue;
      for (const Slide& other : moves[q].slides) {
        if (boxes_overlap(moves[m].slides[s], other)) return true;
      }
    }
    return false;
  };
  struct Knob {
    std::size_t move, leg;
    int axis;
    double margin;
    bool frozen;
  };
  std::vector<Knob> knobs;
  for (std::size_t m = 0; m < moves.size(); ++m) {
    for (std::size_t s = 0; s < moves[m].slides.size(); ++s) {
      for (int i = 0; i < n; ++i) knobs.push_back({m, s, i, base, false});
    }
  }
  for (;;) {
    Knob* steep = nullptr;
    for (Knob& kb : knobs) {
      if (kb.frozen) continue;
      const double d = std::abs(legs[kb.move][kb.leg].delta);
      if (!steep || d / kb.margin > std::abs(legs[steep->move][steep->leg].delta) / steep->margin) {
        steep = &kb;
      }
    }
    if (!steep) break;
    const Leg& l = legs[steep->move][steep->leg];
    Slide& slide = moves[steep->move].slides[steep->leg];
    const Slide kept = slide;
    bool grown = false;
    for (double f : {1.15, 1.03}) {
      const double m = std::min(l.cap(steep->axis), steep->margin * f);
      if (!(m > steep->margin)) break;
      Vec ms = slide.margins();
      ms(steep->axis) = m;
      slide = Slide(l.axis, l.from, l.delta, rho, ms);
      if (!clashes(steep->move, steep->leg)) {
        steep->margin = m;
        grown = true;
        break;
      }
      slide = kept;
    }
    if (!grown) steep->frozen = true;
  }

  for (const auto& mv : moves) {
    for (const auto& s : mv.slides) {
      for (int i = 0; i < n; ++i) {
        if (!(s.box_lo()(i) > -1.0 && s.box_hi()(i) < 1.0)) {
          throw ScheduleInfeasible("relocation corridor leaves the cell");
        }
      }
    }
  }
  return moves;
}

TowerMap::TowerMap(int n, double beta, int k)
    : n_(n),
      beta_(beta),
      k_(k),
      rho_(std::exp2(-beta - 1.0)),
      margin_(relocation_margin(n, beta)),
      tower_(Construction::TowerB, ParameterSchedule::kind_b(n, beta)),
      moves_(build_relocation_moves(n, beta)) {
  if (k < 0) throw std::invalid_argument("stage must be >= 0");
}

bool TowerMap::apply_level(Vec& xi, Mat* jac, std::uint64_t* sig) const {
  bool moved = false;
  for (std::size_t m = 0; m < moves_.size(); ++m) {
    const auto& slides = moves_[m].slides;
    for (std::size_t s = 0; s < slides.size(); ++s) {
      if (jac || sig) {
        const int pc = slides[s].piece(xi);
        if (pc == 0) continue;
        if (sig) *sig = hash_mix(*sig, (m << 16) | (s << 8) | static_cast<std::size_t>(pc));
        if (jac) *jac = slides[s].derivative(xi) * (*jac);
      }
      moved = slides[s].forward(xi) || moved;
    }
  }
  return moved;
}

bool TowerMap::unapply_level(Vec& xi) const {
  bool moved = false;
  for (auto m = moves_.rbegin(); m != moves_.rend(); ++m) {
    for (auto s = m->slides.rbegin(); s != m->slides.rend(); ++s) {
      moved = s->inverse(xi) || moved;
    }
  }
  return moved;
}

Vec TowerMap::eval(const Vec& x) const {
  Vec p = x;
  Vec c = Vec::Zero(n_);
  double h = 1.0;
  for (int i = 1; i <= k_; ++i) {
    Vec xi = (p - c) / h;
    if (apply_level(xi, nullptr, nullptr)) p = c + h * xi;
    if (i == k_) break;
    const int letter = tower_.child_letter(c, i, p);
    const Vec cc = tower_.child_center(c, i, letter);
    const double hr = tower_.inner_half_width(i);
    if (!(sup_norm(p - cc) < hr)) break;
    c = cc;
    h = hr;
  }
  return p;
}

Vec TowerMap::inverse(const Vec& y) const {
  std::vector<Vec> centers{Vec::Zero(n_)};
  std::vector<double> halves{1.0};
  for (int m = 1; m < k_; ++m) {
    const Vec& c = centers.back();
    const int letter = tower_.child_letter(c, m, y);
    Vec cc = tower_.child_center(c, m, letter);
    const double hr = tower_.inner_half_width(m);
    if (!(sup_norm(y - cc) < hr)) break;
    centers.push_back(std::move(cc));
    halves.push_back(hr);
  }
  Vec p = y;
  const int top = std::min<int>(static_cast<int>(centers.size()), k_);
  for (int i = top; i >= 1; --i) {
    const Vec& c = centers[static_cast<std::size_t>(i - 1)];
    const double h = halves[static_cast<std::size_t>(i - 1)];
    Vec xi = (p - c) / h;
    if (unapply_level(xi)) p = c + h * xi;
  }
  return p;
}

Mat TowerMap::derivative(const Vec& x) const {
  Mat jac = Mat::Identity(n_, n_);
  Vec p = x;
  Vec c = Vec::Zero(n_);
  double h = 1.0;
  for (int i = 1; i <= k_; ++i) {
    Vec xi = (p - c) / h;
    if (apply_level(xi, &jac, nullptr)) p = c + h * xi;
    if (i == k_) break;
    const int letter = tower_.child_letter(c, i, p);
    const Vec cc = tower_.child_center(c, i, letter);
    const double hr = tower_.inner_half_width(i);
    if (!(sup_norm(p - cc) < hr)) break;
    c = cc;
    h = hr;
  }
  return jac;
}

Vec TowerMap::rearrange(const Vec& xi, Mat* jac, std::uint64_t* sig) const {
  Vec out = xi;
  apply_level(out, jac, sig);
  return out;
}

Mat TowerMap::inverse_derivative(const Vec& y) const { return derivative(inverse(y)).inverse(); }

std::uint64_t TowerMap::piece(const Vec& x) const {
  std::uint64_t sig = 0;
  Vec p = x;
  Vec c = Vec::Zero(n_);
  double h = 1.0;
  for (int i = 1; i <= k_; ++i) {
    Vec xi = (p - c) / h;
    sig = hash_mix(sig, static_cast<std::uint64_t>(i));
    if (apply_level(xi, nullptr, &sig)) p = c + h * xi;
    if (i == k_) break;
    const int letter = tower_.child_letter(c, i, p);
    const Vec cc = tower_.child_center(c, i, letter);
    const double hr = tower_.inner_half_width(i);
    if (!(sup_norm(p - cc) < hr)) break;
    c = cc;
    h = hr;
  }
  return sig;
}

bool GoodmapReport::all() const {
  return std::all_of(level_pass.begin(), level_pass.end(), [](bool b) { return b; });
}

GoodmapReport verify_goodmap(const TowerMap& l, int samples_per_cell, std::uint64_t seed) {
  const int n = l.dim();
  const double beta = l.beta();
  const CantorConstruction tower(Construction::TowerB, ParameterSchedule::kind_b(n, beta));
  const CantorConstruction setb(Construction::SetB, ParameterSchedule::kind_b(n, beta));
  const CounterRng rng(seed);
  GoodmapReport rep;
  rep.level_pass.push_back(true);
  rep.cells_checked.push_back(1);
  std::uint64_t counter = 0;
  for (int i = 1; i <= l.stage(); ++i) {
    bool pass = true;
    const int cells = 1 << (n * i);
    const double rt = tower.inner_half_width(i);
    const double rb = setb.inner_half_width(i);
    std::vector<int> word(static_cast<std::size_t>(i));
    for (int c = 0; c < cells; ++c) {
      for (int j = 0; j < i; ++j) {
        word[static_cast<std::size_t>(j)] = (c >> (n * (i - 1 - j))) & ((1 << n) - 1);
      }
      const Vec zt = tower.center(word);
      std::vector<int> bword(word.size());
      for (std::size_t j = 0; j < word.size(); ++j) bword[j] = slot_correspondence(n, word[j]);
      const Vec zb = setb.center(bword);
      for (int s = 0; s < samples_per_cell; ++s) {
        const Vec u = rng.point(counter++, n, -0.999, 0.999);
        const Vec x = l.inverse(zt + rt * u);
        if (!(sup_norm(x - zb) <= rb * (1.0 + 1e-9))) pass = false;
      }
    }
    rep.level_pass.push_back(pass);
    rep.cells_checked.push_back(cells);
  }
  return rep;
}

}  // namespace sobolev_cantor
