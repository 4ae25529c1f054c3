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

#include "sobolev_cantor/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <chrono>
#include <queue>
#include <cmath>
#include <limits>
#include <memory>

#include "sobolev_cantor/parallel.hpp"
#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {

void QuadratureConfig::validate() const {
  if (resolution < 4) throw std::invalid_argument("quadrature resolution must be >= 4");
  if (refinement_depth < 0 || refinement_depth > 6) {
    throw std::invalid_argument("refinement depth must be in [0, 6]");
  }
  if (fd_relative_step < 0.0 || fd_relative_step >= 1e-3) {
    throw std::invalid_argument("fd step must be below 1e-3 of the cell width");
  }
  if (!(time_budget >= 0.0)) throw std::invalid_argument("time budget must be >= 0");
}

namespace {

struct AxisNodes {
  std::vector<double> x;
  std::vector<double> w;
};

struct Node {
  Vec u;  // transverse part in slots 1..n-1
  double w;
};

AxisNodes axis_nodes(double lo, double hi, const std::vector<double>& breaks, int resolution) {
  std::vector<double> cuts{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  AxisNodes a;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double h = (cuts[i + 1] - cuts[i]) / resolution;
    for (int j = 0; j < resolution; ++j) {
      a.x.push_back(cuts[i] + (j + 0.5) * h);
      a.w.push_back(h);
    }
  }
  return a;
}

double tensor_sum(const std::vector<AxisNodes>& axes, const std::function<double(const Vec&)>& f) {
  const int n = static_cast<int>(axes.size());
  std::size_t total = 1;
  for (const AxisNodes& a : axes) total *= a.x.size();
  return parallel_sum(total, [&](std::size_t idx) {
    Vec x(n);
    double w = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      const std::size_t m = axes[static_cast<std::size_t>(i)].x.size();
      const std::size_t j = idx % m;
      idx /= m;
      x(i) = axes[static_cast<std::size_t>(i)].x[j];
      w *= axes[static_cast<std::size_t>(i)].w[j];
    }
    return w * f(x);
  });
}

// Recursive midpoint cell: splits into 2^n children while the piece
// signature differs between the corners and the center.
double adaptive_cell(const Vec& lo, const Vec& hi, int depth,
                     const std::function<double(const Vec&)>& f,
                     const std::function<std::uint64_t(const Vec&)>& sig) {
  const int n = static_cast<int>(lo.size());
  const Vec mid = 0.5 * (lo + hi);
  const double vol = (hi - lo).prod();
  if (depth > 0) {
    const std::uint64_t s0 = sig(mid);
    bool uniform = true;
    for (unsigned c = 0; c < (1u << n) && uniform; ++c) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = (c >> i) & 1u ? hi(i) : lo(i);
      // Pull corners slightly inside so shared faces are not ambiguous.
      x = mid + (1.0 - 1e-9) * (x - mid);
      uniform = sig(x) == s0;
    }
    if (!uniform) {
      double sum = 0.0;
      for (unsigned c = 0; c < (1u << n); ++c) {
        Vec a(n), b(n);
        for (int i = 0; i < n; ++i) {
          const bool upper = (c >> i) & 1u;
          a(i) = upper ? mid(i) : lo(i);
          b(i) = upper ? hi(i) : mid(i);
        }
        sum += adaptive_cell(a, b, depth - 1, f, sig);
      }
      return sum;
    }
  }
  return vol * f(mid);
}

std::vector<double> axis_cuts(double lo, double hi, const std::vector<double>& breaks,
                              int resolution) {
  std::vector<double> cuts{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> out{lo};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (int j = 1; j <= resolution; ++j) {
      out.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * j / resolution);
    }
  }
  return out;
}

}  // namespace

double integrate_box_adaptive(const Box& box, int resolution, int depth,
                              const std::function<double(const Vec&)>& f,
                              const std::function<std::uint64_t(const Vec&)>& sig) {
  const int n = static_cast<int>(box.lo.size());
  if (box.hi.size() != n) throw std::invalid_argument("box corners differ in dimension");
  std::vector<std::vector<double>> axes;
  static const std::vector<double> kNone;
  for (int i = 0; i < n; ++i) {
    if (!(box.hi(i) > box.lo(i))) throw std::invalid_argument("empty box");
    const auto& br = box.breaks.empty() ? kNone : box.breaks.at(static_cast<std::size_t>(i));
    axes.push_back(axis_cuts(box.lo(i), box.hi(i), br, resolution));
  }
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size() - 1;
  return parallel_sum(
      total,
      [&](std::size_t idx) {
        Vec lo(n), hi(n);
        for (int i = n - 1; i >= 0; --i) {
          const std::size_t m = axes[static_cast<std::size_t>(i)].size() - 1;
          const std::size_t j = idx % m;
          idx /= m;
          lo(i) = axes[static_cast<std::size_t>(i)][j];
          hi(i) = axes[static_cast<std::size_t>(i)][j + 1];
        }
        return adaptive_cell(lo, hi, depth, f, sig);
      },
      64);
}

double integrate_box(const Box& box, int resolution, const std::function<double(const Vec&)>& f) {
  const int n = static_cast<int>(box.lo.size());
  if (box.hi.size() != n) throw std::invalid_argument("box corners differ in dimension");
  std::vector<AxisNodes> axes;
  static const std::vector<double> kNone;
  for (int i = 0; i < n; ++i) {
    if (!(box.hi(i) > box.lo(i))) throw std::invalid_argument("empty box");
    const auto& br = box.breaks.empty() ? kNone : box.breaks.at(static_cast<std::size_t>(i));
    axes.push_back(axis_nodes(box.lo(i), box.hi(i), br, resolution));
  }
  return tensor_sum(axes, f);
}

SeminormReport seminorm(const StageMap& f, double p, const Region& region,
                        const QuadratureConfig& config) {
  config.validate();
  for (const Box& b : region) {
    for (int i = 0; i < b.lo.size(); ++i) {
      if (b.lo(i) < -1.0 || b.hi(i) > 1.0) throw DomainError("region leaves [-1,1]^n");
    }
  }
  double min_width = 2.0;
  for (const Box& b : region) min_width = std::min(min_width, (b.hi - b.lo).minCoeff());
  const double h = config.fd_relative_step * min_width;
  auto integrand = [&](const Vec& x) {
    const Mat d = h > 0.0 ? finite_difference_jacobian(f, x, h) : f.derivative(x);
    return std::pow(d.norm(), p);
  };
  SeminormReport r;
  for (const Box& b : region) {
    r.value += integrate_box(b, config.resolution, integrand);
    r.refined += integrate_box(b, 2 * config.resolution, integrand);
  }
  r.relative_change = r.refined == 0.0 ? 0.0 : std::abs(r.refined - r.value) / std::abs(r.refined);
  return r;
}

// ---------------------------------------------------------------------------
// Cauchy differences

namespace {

class CauchyContext {
 public:
  CauchyContext(Variant variant, int n, double beta, int k) : variant_(variant), k_(k) {
    if (variant != Variant::T1 && variant != Variant::T2) {
      throw std::invalid_argument("Cauchy tables are defined for T1 and T2");
    }
    if (k < 1) throw std::invalid_argument("Cauchy rows start at k = 1");
    const TentacleFamily fam =
        variant == Variant::T1 ? TentacleFamily::Squeeze : TentacleFamily::Stretch;
    TentacleParams params = TentacleParams::solve(n, beta, fam, ScheduleMode::Demo, k);
    fk_ = std::make_unique<CompositeStage>(variant, beta, k, params);
    fkm1_ = std::make_unique<CompositeStage>(variant, beta, k - 1, params);
  }

  int n() const { return fk_->dim(); }
  int k() const { return k_; }
  const TentacleMap& h() const { return *fk_->tentacles(); }
  const TentacleParams& params() const { return h().params(); }
  const TowerMap& tower() const { return fk_->tower(); }

  /// |Df_k - Df_{k-1}|^{n-1} at the domain point parametrized by tower point z,
  /// times the change-of-variables weight.
  double operator()(const Vec& z) const {
    const int n = this->n();
    Vec x = z;
    double weight = 1.0;
    if (variant_ == Variant::T2) {
      const Vec y = fk_->tower().inverse(z);
      x = fk_->g().inverse(y);
      const double det = fk_->tower().derivative(y).determinant() * fk_->g().derivative(x).determinant();
      weight = 1.0 / std::abs(det);
    }
    const Mat diff = fk_->chain().derivative(x) - fkm1_->chain().derivative(x);
    return weight * std::pow(diff.norm(), n - 1);
  }

  std::uint64_t piece(const Vec& z) const {
    Vec x = z;
    if (variant_ == Variant::T2) x = fk_->g().inverse(fk_->tower().inverse(z));
    return hash_mix(fk_->chain().piece(x), fkm1_->chain().piece(x));
  }

 private:
  Variant variant_;
  int k_;
  std::unique_ptr<CompositeStage> fk_;
  std::unique_ptr<CompositeStage> fkm1_;
};

double tower_center_n(const TentacleParams& p, const std::vector<int>& word) {
  double z = 0.0;
  for (std::size_t l = 0; l < word.size(); ++l) {
    z += p.r_hat(static_cast<int>(l)) * (-1.0 + std::ldexp(2.0 * word[l] + 1.0, -p.n()));
  }
  return z;
}

// Polyhedral decomposition of one rearrangement level (n = 3). Each convex
// piece carries the affine map of the level on it, so the level is integrated
// exactly up to the cubature error of the smooth factors.
namespace poly {

using V3 = Eigen::Vector3d;
using M3 = Eigen::Matrix3d;
using Face = std::vector<V3>;

struct Piece {
  std::vector<Face> faces;  // vertices before the rearrangement
  M3 a = M3::Identity();
  V3 b = V3::Zero();
  V3 at(const V3& y) const { return a * y + b; }
  V3 centroid() const {
    V3 c = V3::Zero();
    std::size_t m = 0;
    for (const Face& f : faces) {
      for (const V3& v : f) c += v;
      m += f.size();
    }
    return c / static_cast<double>(m);
  }
};

struct Plane {
  V3 normal;  // in the current coordinates
  double d;
};

// Splits p by a plane given in the current coordinates. Returns false when the
// plane misses the interior.
bool split(const Piece& p, const Plane& pl, Piece& pos, Piece& neg) {
  const V3 ny = p.a.transpose() * pl.normal;
  const double dy = pl.d - pl.normal.dot(p.b);
  const double tol = 1e-12 * std::max(1.0, ny.norm());
  bool any_pos = false, any_neg = false;
  for (const Face& f : p.faces) {
    for (const V3& v : f) {
      const double s = ny.dot(v) - dy;
      any_pos = any_pos || s > tol;
      any_neg = any_neg || s < -tol;
    }
  }
  if (!any_pos || !any_neg) return false;
  pos = Piece{{}, p.a, p.b};
  neg = Piece{{}, p.a, p.b};
  std::vector<V3> cap;
  for (const Face& f : p.faces) {
    Face fp, fn;
    const std::size_t m = f.size();
    for (std::size_t i = 0; i < m; ++i) {
      const V3& u = f[i];
      const V3& w = f[(i + 1) % m];
      double su = ny.dot(u) - dy, sw = ny.dot(w) - dy;
      if (std::abs(su) <= tol) su = 0.0;
      if (std::abs(sw) <= tol) sw = 0.0;
      if (su >= 0.0) fp.push_back(u);
      if (su <= 0.0) fn.push_back(u);
      if (su == 0.0) cap.push_back(u);
      if ((su > 0.0 && sw < 0.0) || (su < 0.0 && sw > 0.0)) {
        const V3 x = u + (su / (su - sw)) * (w - u);
        fp.push_back(x);
        fn.push_back(x);
        cap.push_back(x);
      }
    }
    if (fp.size() >= 3) pos.faces.push_back(std::move(fp));
    if (fn.size() >= 3) neg.faces.push_back(std::move(fn));
  }
  // Cap polygon: distinct points ordered by angle in the plane.
  std::vector<V3> pts;
  const double merge = 1e-11;
  for (const V3& x : cap) {
    bool dup = false;
    for (const V3& q : pts) dup = dup || (q - x).norm() < merge;
    if (!dup) pts.push_back(x);
  }
  if (pts.size() < 3) return false;
  V3 ctr = V3::Zero();
  for (const V3& x : pts) ctr += x;
  ctr /= static_cast<double>(pts.size());
  const V3 nrm = ny.normalized();
  V3 e1 = (pts[0] - ctr);
  e1 -= nrm * nrm.dot(e1);
  e1.normalize();
  const V3 e2 = nrm.cross(e1);
  std::sort(pts.begin(), pts.end(), [&](const V3& x, const V3& y) {
    return std::atan2(e2.dot(x - ctr), e1.dot(x - ctr)) < std::atan2(e2.dot(y - ctr), e1.dot(y - ctr));
  });
  pos.faces.push_back(pts);
  neg.faces.push_back(pts);
  return pos.faces.size() >= 4 && neg.faces.size() >= 4;
}

void split_all(std::vector<Piece>& pieces, const std::vector<Plane>& planes) {
  std::vector<Piece> next;
  for (const Plane& pl : planes) {
    next.clear();
    next.reserve(pieces.size());
    for (Piece& p : pieces) {
      Piece a, b;
      if (split(p, pl, a, b)) {
        next.push_back(std::move(a));
        next.push_back(std::move(b));
      } else {
        next.push_back(std::move(p));
      }
    }
    pieces.swap(next);
  }
}

Piece cube(const V3& lo, const V3& hi) {
  Piece p;
  auto corner = [&](int m) {
    return V3((m & 1) ? hi(0) : lo(0), (m & 2) ? hi(1) : lo(1), (m & 4) ? hi(2) : lo(2));
  };
  static const int kFaces[6][4] = {{0, 2, 6, 4}, {1, 5, 7, 3}, {0, 4, 5, 1},
                                   {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 6, 7, 5}};
  for (const auto& f : kFaces) p.faces.push_back({corner(f[0]), corner(f[1]), corner(f[2]), corner(f[3])});
  return p;
}

// Centroid rule over a convex piece, fanned into tetrahedra from its vertex
// mean; f receives points before the rearrangement.
template <class F>
double integrate_piece(const Piece& p, F f) {
  const V3 apex = p.centroid();
  double total = 0.0;
  for (const Face& face : p.faces) {
    for (std::size_t i = 1; i + 1 < face.size(); ++i) {
      M3 e;
      e << face[0] - apex, face[i] - apex, face[i + 1] - apex;
      const double vol = std::abs(e.determinant()) / 6.0;
      if (vol == 0.0) continue;
      total += vol * f(V3(0.25 * (apex + face[0] + face[i] + face[i + 1])));
    }
  }
  return total;
}

// Pushes a grid of cubes over [-1,1]^3 through the slides of one level.
std::vector<Piece> decompose(const TowerMap& level, int resolution) {
  std::vector<Piece> pieces;
  const double h = 2.0 / resolution;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      for (int l = 0; l < resolution; ++l) {
        const V3 lo(-1.0 + i * h, -1.0 + j * h, -1.0 + l * h);
        pieces.push_back(cube(lo, lo + V3::Constant(h)));
      }
    }
  }
  std::vector<Plane> start;
  for (int i = 0; i < 3; ++i) {
    start.push_back({V3::Unit(i), 0.0});
    for (double c : {-0.5, 0.5}) {
      for (double o : {-level.rho(), level.rho()}) start.push_back({V3::Unit(i), c + o});
    }
  }
  split_all(pieces, start);

  std::vector<Piece> inside, rest;
  for (const RelocationMove& mv : level.moves()) {
    for (const Slide& sl : mv.slides) {
      const Vec& lo = sl.box_lo();
      const Vec& hi = sl.box_hi();
      inside.clear();
      rest.clear();
      for (Piece& p : pieces) {
        V3 mn = V3::Constant(std::numeric_limits<double>::infinity()), mx = -mn;
        for (const Face& f : p.faces) {
          for (const V3& v : f) {
            const V3 x = p.at(v);
            mn = mn.cwiseMin(x);
            mx = mx.cwiseMax(x);
          }
        }
        bool hit = true;
        for (int i = 0; i < 3; ++i) hit = hit && mn(i) < hi(i) && mx(i) > lo(i);
        (hit ? inside : rest).push_back(std::move(p));
      }
      const int ax = sl.axis();
      const Vec& c = sl.center();
      std::vector<Plane> planes;
      for (int i = 0; i < 3; ++i) {
        planes.push_back({V3::Unit(i), lo(i)});
        planes.push_back({V3::Unit(i), hi(i)});
        planes.push_back({V3::Unit(i), c(i) - sl.rho()});
        planes.push_back({V3::Unit(i), c(i) + sl.rho()});
      }
      const int t1 = ax == 0 ? 1 : 0;
      const int t2 = ax == 2 ? 1 : 2;
      // Where the binding transverse ramp switches: equal weights on both.
      const double m1 = sl.margin(t1), m2 = sl.margin(t2);
      for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) {
          planes.push_back({(s1 / m1) * V3::Unit(t1) - (s2 / m2) * V3::Unit(t2),
                            s1 * c(t1) / m1 - s2 * c(t2) / m2 + sl.rho() * (1.0 / m1 - 1.0 / m2)});
        }
      }
      // Edges of the translated band, x_a - t0 = (t1 - t0) w and
      // t3 - x_a = (t3 - t2) w, on each ramp of the weight.
      const double back = c(ax) - sl.rho() - lo(ax);
      const double front = hi(ax) - c(ax) - sl.rho();
      for (int j : {t1, t2}) {
        const double m = sl.margin(j);
        for (double sg : {-1.0, 1.0}) {
          const double w0 = (sl.rho() + m + sg * c(j)) / m;  // w = w0 - sg x_j / m
          planes.push_back({V3::Unit(ax) + (back * sg / m) * V3::Unit(j), lo(ax) + back * w0});
          planes.push_back({V3::Unit(ax) - (front * sg / m) * V3::Unit(j), hi(ax) - front * w0});
        }
      }
      split_all(inside, planes);
      for (Piece& p : inside) {
        const V3 y = p.centroid();
        Vec x = p.at(y);
        if (sl.piece(x) == 0) continue;
        const M3 d = sl.derivative(x);
        sl.forward(x);
        p.a = d * p.a;
        p.b = V3(x) - p.a * y;
      }
      rest.insert(rest.end(), std::make_move_iterator(inside.begin()),
                  std::make_move_iterator(inside.end()));
      pieces.swap(rest);
    }
  }
  return pieces;
}

}  // namespace poly

double cell_integral(const CauchyContext& ctx, const std::vector<int>& cell_word, int resolution,
                     int depth) {
  const int n = ctx.n();
  const int k = ctx.k();
  const TentacleParams& p = ctx.params();
  const double r = p.r_hat(k - 1);
  Vec c = Vec::Zero(n);
  c(n - 1) = tower_center_n(p, cell_word);
  Box box{c.array() - r, c.array() + r, std::vector<std::vector<double>>(static_cast<std::size_t>(n))};
  // Corridor faces of the level-k rearrangement and the child cube faces.
  TowerMap level(n, p.beta(), 1);
  for (const RelocationMove& m : level.moves()) {
    for (int i = 0; i < n; ++i) {
      box.breaks[static_cast<std::size_t>(i)].push_back(c(i) + r * (m.source(i) - level.rho()));
      box.breaks[static_cast<std::size_t>(i)].push_back(c(i) + r * (m.source(i) + level.rho()));
    }
    for (const Slide& s : m.slides) {
      for (int i = 0; i < n; ++i) {
        box.breaks[static_cast<std::size_t>(i)].push_back(c(i) + r * s.box_lo()(i));
        box.breaks[static_cast<std::size_t>(i)].push_back(c(i) + r * s.box_hi()(i));
      }
    }
  }
  const TentacleLevel& tl = p.level(k);
  const double d = tl.d.value();
  box.breaks[0].push_back(c(0) + tl.r_hat);
  for (int i = 1; i < n; ++i) {
    box.breaks[static_cast<std::size_t>(i)].push_back(c(i) - d);
    box.breaks[static_cast<std::size_t>(i)].push_back(c(i) + d);
  }
  for (int letter = 0; letter < (1 << n); ++letter) {
    std::vector<int> w = cell_word;
    w.push_back(letter);
    const double zn = tower_center_n(p, w);
    for (double off : {d, tl.r_hat}) {
      box.breaks[static_cast<std::size_t>(n - 1)].push_back(zn - off);
      box.breaks[static_cast<std::size_t>(n - 1)].push_back(zn + off);
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    box.breaks[static_cast<std::size_t>(i)].push_back(c(i) - tl.r_hat);
    box.breaks[static_cast<std::size_t>(i)].push_back(c(i) + tl.r_hat);
  }
  if (n == 3) {
    const std::vector<poly::Piece> pieces = poly::decompose(level, resolution);
    const TentacleMap& h = ctx.h();
    const double scale = r * r * r;
    return parallel_sum(
        pieces.size(),
        [&](std::size_t i) {
          const poly::Piece& p = pieces[i];
          const double jac = std::abs(p.a.determinant()) * scale;
          return jac * poly::integrate_piece(p, [&](const poly::V3& y) {
            const Vec z = c + r * Vec(p.at(y));
            return h.in_top_shell(z) ? 0.0 : ctx(z);
          });
        },
        64);
  }
  // Integrate in the coordinates before the level-k rearrangement, where its
  // thin compressed slabs have ordinary width: z = c + r Lambda((y - c) / r).
  const TentacleMap& h = ctx.h();
  const TowerMap& tower = ctx.tower();
  auto pushed = [&](const Vec& y, Mat* jac, std::uint64_t* sig) -> Vec {
    return c + r * tower.rearrange((y - c) / r, jac, sig);
  };
  return integrate_box_adaptive(
      box, resolution, depth,
      [&](const Vec& y) {
        Mat jac = Mat::Identity(n, n);
        const Vec z = pushed(y, &jac, nullptr);
        if (h.in_top_shell(z)) return 0.0;
        return ctx(z) * std::abs(jac.determinant());
      },
      [&](const Vec& y) -> std::uint64_t {
        std::uint64_t sig = 0;
        const Vec z = pushed(y, nullptr, &sig);
        return h.in_top_shell(z) ? 0 : hash_mix(sig, ctx.piece(z));
      });
}

// Integral over [x0, x1] of a function that is smooth between signature
// changes. The changes are located by scanning and bisection; each smooth
// stretch gets a 3-point Gauss-Legendre rule.
static long g_sig=0,g_f=0,g_cuts=0,g_lines=0;
template <class F, class S>
double line_integral(double x0, double x1, int scan, F f0, S sig0) {
  ++g_lines; auto sig=[&](double t){++g_sig; return sig0(t);}; auto f=[&](double t){++g_f; return f0(t);};
  static constexpr double kNode = 0.7745966692414834;
  static constexpr double kW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::vector<double> cuts{x0};
  double prev_x = x0;
  std::uint64_t prev = sig(x0);
  for (int i = 1; i <= scan; ++i) {
    const double x = x0 + (x1 - x0) * i / scan;
    const std::uint64_t cur = sig(x);
    if (cur != prev) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 40 && hi - lo > 1e-10 * (x1 - x0); ++it) {
        const double mid = 0.5 * (lo + hi);
        (sig(mid) == prev ? lo : hi) = mid;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    prev = cur;
    prev_x = x;
  }
  cuts.push_back(x1);
  g_cuts+=cuts.size();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double c = 0.5 * (cuts[i] + cuts[i + 1]);
    const double h = 0.5 * (cuts[i + 1] - cuts[i]);
    if (h <= 0.0) continue;
    total += h * (kW[0] * f(c - kNode * h) + kW[1] * f(c) + kW[2] * f(c + kNode * h));
  }
  return total;
}

// Integral over one level-k tentacle restricted to the axial interval
// [t_lo, t_hi] of its chart. The core box |u_perp| < b and each face of the
// log shell, u_perp = e^{-u} (1, omega) with u = u_d e^{lambda}, are
// integrated along axial lines.
double tentacle_integral(const CauchyContext& ctx, const std::vector<int>& word, double t_lo,
                         double t_hi, int resolution, int depth) {
  const int n = ctx.n();
  const int k = ctx.k();
  const TentacleParams& p = ctx.params();
  const TentacleLevel& tl = p.level(k);
  const TentacleMap& h = ctx.h();
  const int scan = 8 * resolution;

  auto at = [&](const Vec& u) { return h.chart_to_point(word, u); };
  const int core_res = std::max(2, resolution / 2);
  const AxisNodes omega = axis_nodes(-1.0, 1.0, {}, core_res);

  // One axial line per transverse node.
  std::vector<Node> lines;
  const double b = tl.b.value();
  if (b > 0.0) {
    std::vector<AxisNodes> axes(static_cast<std::size_t>(n - 1), axis_nodes(-b, b, {}, core_res));
    std::size_t total = 1;
    for (const auto& ax : axes) total *= ax.x.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      Node nd{Vec::Zero(n), 1.0};
      for (int i = n - 2; i >= 0; --i) {
        const std::size_t j = rem % axes[static_cast<std::size_t>(i)].x.size();
        rem /= axes[static_cast<std::size_t>(i)].x.size();
        nd.u(i + 1) = axes[static_cast<std::size_t>(i)].x[j];
        nd.w *= axes[static_cast<std::size_t>(i)].w[j];
      }
      lines.push_back(nd);
    }
  }
  auto line = [&](const Node& nd) {
    auto point = [&](double t) {
      Vec u = nd.u;
      u(0) = t;
      return at(u);
    };
    return nd.w * line_integral(
                      t_lo, t_hi, scan, [&](double t) { return ctx(point(t)); },
                      [&](double t) { return ctx.piece(point(t)); });
  };
  const double core = parallel_sum(lines.size(), [&](std::size_t i) { return line(lines[i]); }, 1);

  // Shell slice at lambda: every face and tangential node, with
  // dx_perp = r^{n-2} dr d(omega) and dr = r u d(lambda).
  std::size_t tangential = 1;
  for (int i = 0; i < n - 2; ++i) tangential *= omega.x.size();
  const std::size_t per_face = tangential;
  auto slice = [&](double lambda) {
    const double uu = tl.d.u() * std::exp(lambda);
    const double r = std::exp(-uu);
    const double wr = std::pow(r, n - 1) * uu;
    return parallel_sum(
        2 * (n - 1) * per_face,
        [&](std::size_t idx) {
          const int face = static_cast<int>(idx / per_face);
          const int m = 1 + face / 2;
          Node nd{Vec::Zero(n), wr};
          nd.u(m) = face % 2 == 0 ? r : -r;
          std::size_t rem = idx % per_face;
          for (int i = 1; i < n; ++i) {
            if (i == m) continue;
            const std::size_t j = rem % omega.x.size();
            rem /= omega.x.size();
            nd.u(i) = r * omega.x[j];
            nd.w *= omega.w[j];
          }
          return line(nd);
        },
        1);
  };
  // Adaptive 3-point Gauss-Legendre in lambda; the slice peaks sharply where
  // the shell meets the tentacle tip.
  static constexpr double kNode = 0.7745966692414834;
  static constexpr double kW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  auto gauss = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    return h * (kW[0] * slice(c - kNode * h) + kW[1] * slice(c) + kW[2] * slice(c + kNode * h));
  };
  // Globally adaptive: split the interval with the largest error estimate
  // until the estimates sum below the tolerance.
  struct Span {
    double lo, hi, whole, left, right;
    double error() const { return std::abs(left + right - whole); }
    bool operator<(const Span& o) const { return error() < o.error(); }
  };
  auto span = [&](double lo, double hi, double whole) {
    const double mid = 0.5 * (lo + hi);
    return Span{lo, hi, whole, gauss(lo, mid), gauss(mid, hi)};
  };
  std::priority_queue<Span> queue;
  const double width = tl.Delta / resolution;
  double error = 0.0;
  double estimate = 0.0;
  for (int i = 0; i < resolution; ++i) {
    const double lo = i * width, hi = (i + 1) * width;
    const Span s = span(lo, hi, gauss(lo, hi));
    error += s.error();
    estimate += s.left + s.right;
    queue.push(s);
  }
  const double rel_tol = 0.02 * std::ldexp(1.0, -depth);
  const int max_splits = 64 << depth;
  for (int split = 0; split < max_splits && error > rel_tol * std::abs(estimate + core); ++split) {
    const Span top = queue.top();
    queue.pop();
    const double mid = 0.5 * (top.lo + top.hi);
    const Span a = span(top.lo, mid, top.left);
    const Span b = span(mid, top.hi, top.right);
    error += a.error() + b.error() - top.error();
    estimate += a.left + a.right + b.left + b.right - top.left - top.right;
    queue.push(a);
    queue.push(b);
  }
  const double shell = estimate;

  return core + shell;
}

// Tentacle part of a row using the congruence of tentacles: on an axial
// interval the integrand depends only on the letters of levels k-1, k and of
// the level whose shift ramp covers the interval.
using Clock = std::chrono::steady_clock;

// Thrown when a table runs past its time budget in the middle of a row.
struct OutOfTime {};

double tentacle_part(const CauchyContext& ctx, int resolution, int depth,
                     Clock::time_point deadline = Clock::time_point::max()) {
  const int n = ctx.n();
  const int k = ctx.k();
  const TentacleParams& p = ctx.params();
  const TentacleLevel& tl = p.level(k);
  std::vector<double> cuts{tl.r_hat, tl.domain_end()};
  for (int j = 1; j < k; ++j) {
    if (p.r_hat(j) > tl.r_hat && p.r_hat(j) < tl.domain_end()) cuts.push_back(p.r_hat(j));
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    std::vector<int> relevant;
    for (int l = 1; l <= k; ++l) {
      const bool tail = l >= k - 1;
      const bool ramp = l >= 2 && mid > p.r_hat(l) && mid < p.r_hat(l - 1);
      if (tail || ramp) relevant.push_back(l);
    }
    const int free_levels = k - static_cast<int>(relevant.size());
    const double multiplicity = std::ldexp(1.0, n * free_levels);
    const std::size_t classes = std::size_t{1} << (n * relevant.size());
    for (std::size_t cls = 0; cls < classes; ++cls) {
      if (Clock::now() > deadline) throw OutOfTime{};
      std::vector<int> word(static_cast<std::size_t>(k), 0);
      std::size_t rem = cls;
      for (int l : relevant) {
        word[static_cast<std::size_t>(l - 1)] = static_cast<int>(rem % (1u << n));
        rem >>= n;
      }
      total += multiplicity *
               tentacle_integral(ctx, word, cuts[i], cuts[i + 1], resolution, depth);
    }
  }
  return total;
}

}  // namespace

double cauchy_cell_integral(Variant variant, int n, double beta, int k,
                            const std::vector<int>& cell_word, int resolution,
                            int refinement_depth) {
  const CauchyContext ctx(variant, n, beta, k);
  if (static_cast<int>(cell_word.size()) != k - 1) throw InvalidAddress("cell word length != k-1");
  return cell_integral(ctx, cell_word, resolution, refinement_depth);
}

double cauchy_tentacle_integral(Variant variant, int n, double beta, int k,
                                const std::vector<int>& word, double t_lo, double t_hi,
                                int resolution, int refinement_depth) {
  const CauchyContext ctx(variant, n, beta, k);
  if (static_cast<int>(word.size()) != k) throw InvalidAddress("tentacle word length != k");
  return tentacle_integral(ctx, word, t_lo, t_hi, resolution, refinement_depth);
}

namespace {

std::pair<double, double> row_until(Variant variant, int n, double beta, int k, int resolution,
                                    int refinement_depth, Clock::time_point deadline) {
  const CauchyContext ctx(variant, n, beta, k);
  const double cells = std::ldexp(1.0, n * (k - 1)) *
                       cell_integral(ctx, std::vector<int>(static_cast<std::size_t>(k - 1), 0),
                                     resolution, refinement_depth);
  if (Clock::now() > deadline) throw OutOfTime{};
  return {cells, tentacle_part(ctx, resolution, refinement_depth, deadline)};
}

}  // namespace

std::pair<double, double> cauchy_row(Variant variant, int n, double beta, int k, int resolution,
                                     int refinement_depth) {
  return row_until(variant, n, beta, k, resolution, refinement_depth, Clock::time_point::max());
}

CauchyTable cauchy_table(Variant variant, int n, double beta, int k_max,
                         const QuadratureConfig& config) {
  config.validate();
  CauchyTable t;
  t.variant = variant;
  t.p = n - 1;
  const Clock::time_point deadline =
      config.time_budget > 0.0
          ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(config.time_budget))
          : Clock::time_point::max();
  for (int k = 1; k <= k_max; ++k) {
    CauchyRow row;
    row.k = k;
    try {
      const auto [cells, tent] = row_until(variant, n, beta, k, config.resolution,
                                           config.refinement_depth, deadline);
      const auto [cells2, tent2] = row_until(variant, n, beta, k, 2 * config.resolution,
                                             config.refinement_depth, deadline);
      row.cells = cells2;
      row.tentacles = tent2;
      row.integral = cells + tent;
      row.refined = cells2 + tent2;
    } catch (const OutOfTime&) {
      t.complete = false;
      break;
    }
    row.relative_change =
        row.refined == 0.0 ? 0.0 : std::abs(row.refined - row.integral) / std::abs(row.refined);
    t.rows.push_back(row);
  }
  for (const CauchyRow& r : t.rows) {
    t.c = std::max(t.c, r.refined / (std::exp2(-beta * r.k) + 1.0 / (r.k * r.k)));
  }
  t.positive = true;
  t.decreasing = true;
  t.consistent = true;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CauchyRow& r = t.rows[i];
    r.envelope = t.c * (std::exp2(-beta * r.k) + 1.0 / (r.k * r.k));
    const bool below_prev = i == 0 || r.refined < t.rows[i - 1].refined;
    r.pass = r.refined > 0.0 && r.refined <= r.envelope && below_prev && r.relative_change < 0.05;
    t.positive = t.positive && r.refined > 0.0;
    t.decreasing = t.decreasing && below_prev;
    t.consistent = t.consistent && r.relative_change < 0.05;
  }
  return t;
}

// ---------------------------------------------------------------------------

JacobianSurvey jacobian_survey(const StageMap& f, std::size_t count, double fd_step,
                               std::uint64_t seed) {
  const int n = f.dim();
  const CounterRng rng(seed, 0x4a4143ULL);
  std::vector<double> det(count);
  parallel_for(count, [&](std::size_t i) {
    // Keep the stencil inside the cube.
    const Vec x = rng.point(i, n, -1.0 + 2.0 * fd_step, 1.0 - 2.0 * fd_step);
    det[i] = finite_difference_jacobian(f, x, fd_step).determinant();
  });
  JacobianSurvey s;
  s.samples = count;
  s.min_det = count > 0 ? det[0] : 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    s.min_det = std::min(s.min_det, det[i]);
    if (det[i] > 0.0) {
      ++s.positive;
      continue;
    }
    const Vec x = rng.point(i, n, -1.0 + 2.0 * fd_step, 1.0 - 2.0 * fd_step);
    s.nonpositive.push_back(x);
    const std::uint64_t sig = f.piece(x);
    bool crosses = false;
    for (int j = 0; j < n && !crosses; ++j) {
      for (double sgn : {-1.0, 1.0}) {
        for (int step = 1; step <= 10 && !crosses; ++step) {
          Vec y = x;
          y(j) += sgn * step * fd_step;
          crosses = f.piece(y) != sig;
        }
      }
    }
    if (crosses) ++s.near_interface;
  }
  s.fraction = count > 0 ? static_cast<double>(s.positive) / static_cast<double>(count) : 0.0;
  return s;
}

BoundaryReport boundary_identity_check(const StageMap& f, int per_face, std::uint64_t seed) {
  const int n = f.dim();
  const CounterRng rng(seed, 0x424e44ULL);
  BoundaryReport r;
  for (int face = 0; face < 2 * n; ++face) {
    for (int i = 0; i < per_face; ++i) {
      Vec x = rng.point(static_cast<std::uint64_t>(face) * per_face + i, n);
      x(face / 2) = face % 2 == 0 ? -1.0 : 1.0;
      r.max_deviation = std::max(r.max_deviation, sup_norm(f.eval(x) - x));
      ++r.samples;
    }
  }
  r.pass = r.max_deviation <= 1e-12;
  return r;
}

InjectivityReport injectivity_probe(const StageMap& f, std::size_t count, double tol,
                                    std::uint64_t seed) {
  const int n = f.dim();
  const CounterRng rng(seed, 0x494e4aULL);
  std::vector<Vec> xs(count), ys(count);
  parallel_for(count, [&](std::size_t i) {
    xs[i] = rng.point(i, n);
    ys[i] = f.eval(xs[i]);
  });
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ys[a](0) < ys[b](0) || (ys[a](0) == ys[b](0) && a < b);
  });
  InjectivityReport r;
  r.samples = count;
  r.min_image_gap = std::numeric_limits<double>::infinity();
  // Sweep: only neighbours within the running gap along axis 0 can be closer.
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const Vec& ya = ys[order[a]];
      const Vec& yb = ys[order[b]];
      if (yb(0) - ya(0) > std::max(r.min_image_gap, tol)) break;
      const double gap = (ya - yb).norm();
      r.min_image_gap = std::min(r.min_image_gap, gap);
      if (gap < tol && (xs[order[a]] - xs[order[b]]).norm() > tol) ++r.collisions;
    }
  }
  return r;
}

double lipschitz_quotient(const StageMap& f, std::size_t pairs, double scale, std::uint64_t seed) {
  const int n = f.dim();
  const CounterRng rng(seed, 0x4c4950ULL);
  std::vector<double> q(pairs, 0.0);
  parallel_for(pairs, [&](std::size_t i) {
    const Vec x = rng.point(2 * i, n);
    Vec y = x + scale * rng.point(2 * i + 1, n);
    for (int j = 0; j < n; ++j) y(j) = std::clamp(y(j), -1.0, 1.0);
    const double d = (x - y).norm();
    if (d > 0.0) q[i] = (f.eval(x) - f.eval(y)).norm() / d;
  });
  return pairs > 0 ? *std::max_element(q.begin(), q.end()) : 0.0;
}

CollapseReport fl_collapse(int n, double beta, int k, std::size_t samples, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("collapse needs k >= 1");
  const CompositeStage f(Variant::FL, n, beta, k);
  const ParameterSchedule& source = f.g().source();
  const double r = source.r(k);
  const CounterRng letters(seed, 0x464cULL);
  const CounterRng offsets(seed, 0x464dULL);
  std::vector<Vec> images(samples);
  parallel_for(samples, [&](std::size_t i) {
    Address a{Construction::SetA, {}};
    for (int l = 0; l < k; ++l) {
      const std::uint64_t idx = i * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(l);
      a.word.push_back(static_cast<int>(letters.bits(idx) % (1u << n)));
    }
    const Vec x = cell_center(source, a) + r * offsets.point(i, n);
    images[i] = f.eval(x);
  });
  CollapseReport rep;
  rep.stage = k;
  rep.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t j = i + 1; j < samples; ++j) {
      rep.image_diameter = std::max(rep.image_diameter, (images[i] - images[j]).norm());
    }
  }
  rep.lipschitz = lipschitz_quotient(f, samples, 0.05, seed);
  return rep;
}

}  // namespace sobolev_cantor
