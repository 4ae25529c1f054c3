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

#include "sobolev_cantor/degree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numbers>
#include <optional>

#include "sobolev_cantor/parallel.hpp"
#include "sobolev_cantor/random.hpp"

namespace sobolev_cantor {

namespace {

using V3 = Eigen::Vector3d;

V3 v3(const Vec& v) { return V3(v(0), v(1), v(2)); }

// Signed solid angle of the triangle (a, b, c) seen from the origin.
double solid_angle(const V3& a, const V3& b, const V3& c) {
  const double la = a.norm(), lb = b.norm(), lc = c.norm();
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(num, den);
}

// Closest point on a triangle, after Ericson's region tests.
double triangle_distance(const V3& p, const V3& a, const V3& b, const V3& c) {
  const V3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return ap.norm();
  const V3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return bp.norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return (p - (a + ab * (d1 / (d1 - d3)))).norm();
  const V3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return cp.norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return (p - (a + ac * (d2 / (d2 - d6)))).norm();
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return (p - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6))))).norm();
  }
  const double denom = 1.0 / (va + vb + vc);
  return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

// Unit-sphere octahedron mesh subdivided `level` times, faces outward.
void sphere_mesh(int level, std::vector<V3>& verts, std::vector<std::array<int, 3>>& faces) {
  verts = {V3::UnitX(), -V3::UnitX(), V3::UnitY(), -V3::UnitY(), V3::UnitZ(), -V3::UnitZ()};
  faces.clear();
  for (int sx = 0; sx < 2; ++sx) {
    for (int sy = 0; sy < 2; ++sy) {
      for (int sz = 0; sz < 2; ++sz) {
        const int a = sx, b = 2 + sy, c = 4 + sz;
        const bool flip = (sx + sy + sz) % 2 == 1;
        faces.push_back(flip ? std::array<int, 3>{a, c, b} : std::array<int, 3>{a, b, c});
      }
    }
  }
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int i, int j) {
      const auto key = std::minmax(i, j);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      verts.push_back((verts[static_cast<std::size_t>(i)] + verts[static_cast<std::size_t>(j)]).normalized());
      const int id = static_cast<int>(verts.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({ab, f[1], bc});
      next.push_back({ca, bc, f[2]});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
}

// Near-cubic grid with about `points` nodes over [lo, hi].
std::vector<Vec> grid_over(const Vec& lo, const Vec& hi, std::size_t points) {
  const int n = static_cast<int>(lo.size());
  const int m = std::max(1, static_cast<int>(std::lround(std::pow(static_cast<double>(points), 1.0 / n))));
  std::vector<int> dims(static_cast<std::size_t>(n), m);
  const double rest = std::pow(static_cast<double>(m), n - 1);
  dims.back() = std::max(1, static_cast<int>(std::ceil(static_cast<double>(points) / rest)));
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<Vec> out;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    Vec y(n);
    for (int i = 0; i < n; ++i) {
      const int d = dims[static_cast<std::size_t>(i)];
      const std::size_t j = r % static_cast<std::size_t>(d);
      r /= static_cast<std::size_t>(d);
      y(i) = lo(i) + (hi(i) - lo(i)) * (static_cast<double>(j) + 0.5) / d;
    }
    out.push_back(std::move(y));
  }
  return out;
}

void require_dim(int n) {
  if (n != 2 && n != 3) throw UnsupportedDimension("degree supports n = 2 and n = 3");
}

}  // namespace

ImageSphere::ImageSphere(PointMap f, SphereProbe probe) : f_(std::move(f)), probe_(std::move(probe)) {
  require_dim(dim());
  if (!(probe_.radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (probe_.level < 0) throw std::invalid_argument("mesh level must be >= 0");
}

const ImageSphere::Mesh& ImageSphere::mesh(int level) const {
  if (level < 0 || level > 12) throw std::invalid_argument("mesh level out of range");
  if (meshes_.size() <= static_cast<std::size_t>(level)) meshes_.resize(static_cast<std::size_t>(level) + 1);
  auto& slot = meshes_[static_cast<std::size_t>(level)];
  if (slot) return *slot;
  auto m = std::make_unique<Mesh>();
  const int n = dim();
  std::vector<Vec> domain;
  if (n == 3) {
    std::vector<V3> verts;
    sphere_mesh(level, verts, m->faces);
    for (const V3& v : verts) domain.push_back(probe_.center + probe_.radius * Vec(v));
  } else {
    const int count = 4 << level;
    for (int j = 0; j < count; ++j) {
      const double t = 2.0 * std::numbers::pi * j / count;
      Vec v(2);
      v << std::cos(t), std::sin(t);
      domain.push_back(probe_.center + probe_.radius * v);
    }
  }
  m->images.resize(domain.size());
  parallel_for(domain.size(), [&](std::size_t i) { m->images[i] = f_(domain[i]); });
  if (n == 3) {
    for (const auto& f : m->faces) {
      for (int e = 0; e < 3; ++e) {
        const Vec& p = m->images[static_cast<std::size_t>(f[static_cast<std::size_t>(e)])];
        const Vec& q = m->images[static_cast<std::size_t>(f[static_cast<std::size_t>((e + 1) % 3)])];
        m->longest = std::max(m->longest, (p - q).norm());
      }
    }
  } else {
    for (std::size_t i = 0; i < m->images.size(); ++i) {
      m->longest = std::max(m->longest, (m->images[i] - m->images[(i + 1) % m->images.size()]).norm());
    }
  }
  slot = std::move(m);
  return *slot;
}

double ImageSphere::raw(int level, const Vec& y) const {
  const Mesh& m = mesh(level);
  if (dim() == 3) {
    const V3 p = v3(y);
    const double sum = parallel_sum(m.faces.size(), [&](std::size_t i) {
      const auto& f = m.faces[i];
      return solid_angle(v3(m.images[static_cast<std::size_t>(f[0])]) - p,
                         v3(m.images[static_cast<std::size_t>(f[1])]) - p,
                         v3(m.images[static_cast<std::size_t>(f[2])]) - p);
    });
    return sum / (4.0 * std::numbers::pi);
  }
  const std::size_t count = m.images.size();
  const double sum = parallel_sum(count, [&](std::size_t i) {
    const Vec a = m.images[i] - y;
    const Vec b = m.images[(i + 1) % count] - y;
    return std::atan2(a(0) * b(1) - a(1) * b(0), a.dot(b));
  });
  return sum / (2.0 * std::numbers::pi);
}

double ImageSphere::distance(int level, const Vec& y) const {
  const Mesh& m = mesh(level);
  double best = std::numeric_limits<double>::infinity();
  if (dim() == 3) {
    const V3 p = v3(y);
    for (const auto& f : m.faces) {
      best = std::min(best, triangle_distance(p, v3(m.images[static_cast<std::size_t>(f[0])]),
                                              v3(m.images[static_cast<std::size_t>(f[1])]),
                                              v3(m.images[static_cast<std::size_t>(f[2])])));
    }
  } else {
    for (std::size_t i = 0; i < m.images.size(); ++i) {
      best = std::min(best, segment_distance(y, m.images[i], m.images[(i + 1) % m.images.size()]));
    }
  }
  return best;
}

double ImageSphere::resolution(int level) const { return mesh(level).longest; }

DegreeReport ImageSphere::degree(const Vec& y, const DegreeSettings& settings) const {
  if (y.size() != dim()) throw std::invalid_argument("y has the wrong dimension");
  const int steps = std::max(1, settings.stable_steps);
  DegreeReport rep;
  for (int level = probe_.level; level <= std::max(settings.max_level, probe_.level + steps); ++level) {
    rep.raw = raw(level, y);
    rep.history.push_back(rep.raw);
    rep.refinements = static_cast<int>(rep.history.size()) - 1;
    if (rep.refinements < steps) continue;
    const double nearest = std::round(rep.raw);
    bool settled = std::abs(rep.raw - nearest) < settings.snap;
    for (int s = 0; s < steps && settled; ++s) {
      const std::size_t i = rep.history.size() - 1 - static_cast<std::size_t>(s);
      settled = std::abs(rep.history[i] - rep.history[i - 1]) < settings.stability;
    }
    if (!settled) continue;
    rep.distance = distance(level, y);
    if (rep.distance > settings.min_distance) {
      rep.degree = static_cast<int>(nearest);
      return rep;
    }
  }
  throw IndeterminateDegree("degree does not settle: y is too close to the image of the sphere");
}

DegreeReport degree(const PointMap& f, const SphereProbe& probe, const Vec& y,
                    const DegreeSettings& settings) {
  return ImageSphere(f, probe).degree(y, settings);
}

DegreeReport degree(const StageMap& f, const SphereProbe& probe, const Vec& y,
                    const DegreeSettings& settings) {
  return degree([&f](const Vec& x) { return f.eval(x); }, probe, y, settings);
}

InvReport inv_check(const StageMap& f, const Vec& center, double radius, std::size_t inside,
                    std::size_t outside, std::uint64_t seed, const DegreeSettings& settings) {
  const int n = f.dim();
  require_dim(n);
  const CounterRng jitter(seed, 1);
  // Rejection samples in the ball of radius `hi` but outside radius `lo`,
  // inside the cube.
  auto sample = [&](std::size_t count, double lo, double hi, std::uint64_t stream) {
    std::vector<Vec> pts;
    const CounterRng r(seed, stream);
    for (std::uint64_t i = 0; pts.size() < count && i < 1000 * count + 1000; ++i) {
      const Vec x = center + hi * r.point(i, n);
      const double d = (x - center).norm();
      if (d >= hi || d <= lo || sup_norm(x) >= 1.0) continue;
      pts.push_back(x);
    }
    return pts;
  };
  for (int attempt = 0;; ++attempt) {
    const double r = attempt == 0 ? radius : radius * (1.0 + jitter.uniform(attempt, -0.01, 0.01));
    InvReport rep;
    rep.radius = r;
    rep.radius_perturbed = attempt > 0;
    const ImageSphere sphere([&f](const Vec& x) { return f.eval(x); },
                             SphereProbe{center, r, 4});
    std::size_t unresolved = 0;
    auto judge = [&](const Vec& x, bool in) {
      const Vec y = f.eval(x);
      if (sphere.distance(settings.max_level, y) < settings.near_tolerance) {
        ++rep.near_sphere;
        return;
      }
      try {
        const int d = sphere.degree(y, settings).degree;
        if (in && d == 0) ++rep.inside_violations;
        if (!in && d != 0) ++rep.outside_violations;
      } catch (const IndeterminateDegree&) {
        ++rep.near_sphere;
        ++unresolved;
      }
    };
    for (const Vec& x : sample(inside, -1.0, 0.999 * r, 2)) {
      ++rep.inside;
      judge(x, true);
    }
    for (const Vec& x : sample(outside, 1.001 * r, 2.0 * r, 3)) {
      ++rep.outside;
      judge(x, false);
    }
    // Many unresolved samples mean the sphere runs along an interface.
    if (10 * unresolved <= rep.inside + rep.outside) return rep;
    if (attempt >= 5) throw IndeterminateDegree("inv_check: no admissible radius found");
  }
}

bool StabilityReport::constant() const {
  return std::all_of(reports.begin(), reports.end(),
                     [&](const DegreeReport& r) { return r.degree == reports.front().degree; });
}

StabilityReport degree_stability(Variant variant, int n, double beta, int k_lo, int k_hi,
                                 const SphereProbe& probe, const Vec& y,
                                 const DegreeSettings& settings) {
  if (k_lo > k_hi) throw std::invalid_argument("empty stage range");
  StabilityReport rep;
  for (int k = k_lo; k <= k_hi; ++k) {
    const CompositeStage f(variant, n, beta, k);
    rep.stages.push_back(k);
    rep.reports.push_back(degree(f, probe, y, settings));
  }
  return rep;
}

namespace {

void widen(const ImageSphere& s, Vec& lo, Vec& hi) {
  for (const Vec& y : s.images(s.probe().level)) {
    lo = lo.cwiseMin(y);
    hi = hi.cwiseMax(y);
  }
}

// Degree of y for the sphere, or nullopt when y is too close to its image.
std::optional<int> judged_degree(const ImageSphere& s, const Vec& y, const DegreeSettings& settings) {
  if (s.distance(settings.max_level, y) < settings.near_tolerance) return std::nullopt;
  try {
    return s.degree(y, settings).degree;
  } catch (const IndeterminateDegree&) {
    return std::nullopt;
  }
}

}  // namespace

TopologicalImageProbe nesting_probe(const StageMap& f, const SphereProbe& small,
                                    const SphereProbe& large, std::size_t points,
                                    const DegreeSettings& settings) {
  require_dim(f.dim());
  if ((small.center - large.center).norm() + small.radius > large.radius) {
    throw std::invalid_argument("nesting probe needs B(a, r) inside B(b, s)");
  }
  auto eval = [&f](const Vec& x) { return f.eval(x); };
  const ImageSphere s(eval, small), l(eval, large);
  const int n = f.dim();
  Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  widen(s, lo, hi);
  TopologicalImageProbe rep;
  for (const Vec& y : grid_over(lo, hi, points)) {
    ++rep.grid;
    const auto ds = judged_degree(s, y, settings);
    const auto dl = judged_degree(l, y, settings);
    if (!ds || !dl) continue;
    ++rep.judged;
    if (*ds != 0 && *dl == 0) ++rep.violations;
  }
  return rep;
}

TopologicalImageProbe disjoint_probe(const StageMap& f, const SphereProbe& a,
                                     const SphereProbe& b, std::size_t points,
                                     const DegreeSettings& settings) {
  require_dim(f.dim());
  if ((a.center - b.center).norm() <= a.radius + b.radius) {
    throw std::invalid_argument("disjoint probe needs disjoint balls");
  }
  auto eval = [&f](const Vec& x) { return f.eval(x); };
  const ImageSphere sa(eval, a), sb(eval, b);
  const int n = f.dim();
  Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  widen(sa, lo, hi);
  widen(sb, lo, hi);
  TopologicalImageProbe rep;
  for (const Vec& y : grid_over(lo, hi, points)) {
    ++rep.grid;
    const auto da = judged_degree(sa, y, settings);
    const auto db = judged_degree(sb, y, settings);
    if (!da || !db) continue;
    ++rep.judged;
    if (*da != 0 && *db != 0) ++rep.violations;
  }
  return rep;
}

}  // namespace sobolev_cantor
