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

#include "sobolev_cantor/tentacles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace sobolev_cantor {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// Sup norm of x_2..x_n.
double perp_norm(const Vec& u, int* arg = nullptr) {
  double best = 0.0;
  int m = 1;
  for (int i = 1; i < u.size(); ++i) {
    const double a = std::abs(u(i));
    if (a > best) {
      best = a;
      m = i;
    }
  }
  if (arg != nullptr) *arg = m;
  return best;
}

double tower_vn(int n, int letter) {
  return -1.0 + std::ldexp(2.0 * letter + 1.0, -n);
}

}  // namespace

bool PLKnots::monotone() const {
  for (int i = 0; i < 3; ++i) {
    if (!(t[i] < t[i + 1]) || !(s[i] < s[i + 1])) return false;
  }
  return true;
}

int pl_piece(double t, const PLKnots& k) {
  if (t < k.t[1]) return 0;
  if (t < k.t[2]) return 1;
  return 2;
}

double pl_interpolate(double t, const PLKnots& k) {
  if (!(t >= k.t[0] && t <= k.t[3])) {
    throw DomainError("pl_interpolate: t outside the knot range");
  }
  const int i = pl_piece(t, k);
  const double theta = (t - k.t[i]) / (k.t[i + 1] - k.t[i]);
  return k.s[i] + (k.s[i + 1] - k.s[i]) * theta;
}

double pl_invert(double s, const PLKnots& k) {
  if (!(s >= k.s[0] && s <= k.s[3])) {
    throw DomainError("pl_invert: s outside the knot range");
  }
  int i = 2;
  if (s < k.s[1]) {
    i = 0;
  } else if (s < k.s[2]) {
    i = 1;
  }
  const double theta = (s - k.s[i]) / (k.s[i + 1] - k.s[i]);
  return k.t[i] + (k.t[i + 1] - k.t[i]) * theta;
}

PLKnots TentacleLevel::knots(double lambda) const {
  PLKnots k;
  k.t = t;
  for (int i = 0; i < 4; ++i) k.s[i] = s0[i] + lambda * ds[i];
  // The end knots do not move; keep them bit-exact.
  k.s[0] = s0[0];
  k.s[3] = s0[3];
  return k;
}

TentacleParams::TentacleParams(int n, double beta, TentacleFamily family, ScheduleMode mode)
    : n_(n), beta_(beta), family_(family), mode_(mode) {}

double TentacleParams::r_hat(int k) const { return std::exp2(-k * (beta_ + 1.0)); }

double TentacleParams::a(int k) const {
  double sum = 0.0;
  for (int i = k; i >= 0; --i) sum += r_hat(i + 2);
  return 1.0 - sum;
}

const TentacleLevel& TentacleParams::level(int k) const {
  if (k < 1 || k > k_max()) {
    throw std::out_of_range("tentacle level " + std::to_string(k) + " not solved");
  }
  return levels_[static_cast<std::size_t>(k - 1)];
}

double TentacleParams::line(int k, double t) const {
  if (k == 0) return t;
  const TentacleLevel& l = level(k);
  if (t <= l.r_hat) return t;
  return l.r_hat + (t - l.r_hat) * (l.line_y - l.r_hat) / (l.line_x - l.r_hat);
}

double TentacleParams::lambda_from_u(int k, double u) const {
  const TentacleLevel& l = level(k);
  if (u >= l.b.u()) return l.Delta;
  if (u <= l.d.u()) return 0.0;
  return std::clamp(std::log(u) - l.d.loglog(), 0.0, l.Delta);
}

double TentacleParams::lambda_from_radius(int k, double r) const {
  if (r <= 0.0) return level(k).Delta;
  return lambda_from_u(k, -std::log(r));
}

double TentacleParams::dlambda_dr(int k, double r) const {
  const TentacleLevel& l = level(k);
  if (r <= 0.0) return 0.0;
  const double u = -std::log(r);
  if (u >= l.b.u() || u <= l.d.u()) return 0.0;
  return -1.0 / (r * u);
}

double strict_log_radius(int n, double beta, int k, double log_fixd_delta) {
  if (n < 3) throw UnsupportedDimension("strict radius needs n >= 3");
  return std::exp(((beta + 1.0) * k * (n - 1) * kLn2 - log_fixd_delta) / (n - 2));
}

TentacleLevel TentacleParams::solve_level(int k, const TentacleParams& prev) {
  const int n = prev.n_;
  const double beta = prev.beta_;
  if (k != prev.k_max() + 1) throw std::invalid_argument("levels must be solved in order");
  TentacleLevel l;
  l.k = k;
  l.r_hat = prev.r_hat(k);
  l.r_hat_prev = prev.r_hat(k - 1);
  l.a = prev.a(k);
  l.c = prev.a(k - 1);
  l.a_tilde = 2.0 * l.r_hat;
  // The first stretched tentacle would reach past the cube; stop it at c_1.
  l.c_tilde = k >= 2 ? 2.0 * l.r_hat_prev : l.c;

  auto prev_line = [&](double t) { return prev.line(k - 1, t); };
  if (prev.family_ == TentacleFamily::Squeeze) {
    const double kappa = k >= 2 ? l.r_hat_prev : 0.5 * (l.r_hat + l.a);
    l.Delta = prev_line(l.a) - l.a_tilde;
    l.line_x = l.a;
    l.line_y = l.a_tilde;
    const double lk_kappa =
        l.r_hat + (kappa - l.r_hat) * (l.a_tilde - l.r_hat) / (l.a - l.r_hat);
    l.A = (prev_line(kappa) - lk_kappa) / l.Delta;
    l.t = {l.r_hat, kappa, l.a, l.c};
    l.s0 = {l.r_hat, prev_line(kappa), prev_line(l.a), prev_line(l.c)};
    l.ds = {0.0, -l.A, -1.0, 0.0};
  } else {
    const double kappa = k >= 2 ? l.r_hat_prev : 0.5 * (l.a_tilde + l.c_tilde);
    l.Delta = l.a - prev_line(l.a_tilde);
    l.line_x = l.a_tilde;
    l.line_y = l.a;
    l.A = (0.5 * (l.a + l.c) - prev_line(kappa)) / l.Delta;
    l.t = {l.r_hat, l.a_tilde, kappa, l.c_tilde};
    l.s0 = {l.r_hat, prev_line(l.a_tilde), prev_line(kappa), prev_line(l.c_tilde)};
    l.ds = {0.0, 1.0, l.A, 0.0};
  }
  if (!(l.Delta > 0.0) || !l.knots(0.0).monotone() || !l.knots(l.Delta).monotone()) {
    throw ScheduleInfeasible("tentacle knots are not increasing at level " + std::to_string(k));
  }

  const double q = 0.5 * (n - 1);
  l.c_geom = std::exp2(q - 1.0) * (n - 1) * std::ldexp(1.0, n - 1) * (l.t[3] - l.r_hat) *
             std::pow(std::max(1.0, l.A), n - 1);
  l.c_fixd = (n - 2) / (2.0 * l.c_geom);

  // Nesting: d_k <= 4^{-n} b_{k-1} and d_k <= 2^{-n-1} r_hat_{k-1}.
  double u_floor = std::max(1.0, -std::log(std::ldexp(l.r_hat_prev, -n - 1)));
  if (k >= 2) u_floor = std::max(u_floor, prev.level(k - 1).b.u() + n * std::log(4.0));

  double u_d = 0.0;
  if (prev.mode_ == ScheduleMode::Demo) {
    u_d = std::max(u_floor, std::log(20.0) + (k - 1) * std::log(4.0));
  } else {
    const double log_dt = prev.family_ == TentacleFamily::Squeeze
                              ? -k * beta * (n - 1) * kLn2 - 2.0 * std::log(k)
                              : -k * beta * (2 * n - 1) * kLn2 - 2.0 * std::log(k);
    l.delta_tilde = std::exp(log_dt);
    const double log_delta = log_dt - n * k * kLn2;
    l.delta = std::exp(log_delta);
    u_d = std::max(u_floor, strict_log_radius(n, beta, k, std::log(l.c_fixd) + log_delta));
  }
  l.d = LogMagnitude::from_u(u_d);
  l.b = LogMagnitude::from_u(u_d * std::exp(l.Delta));
  if (!(u_d > -std::log(l.a))) {
    throw ScheduleInfeasible("tentacle radius does not fit at level " + std::to_string(k));
  }
  return l;
}

TentacleParams TentacleParams::solve(int n, double beta, TentacleFamily family, ScheduleMode mode,
                                     int k_max) {
  if (n < 3) throw UnsupportedDimension("tentacles need n >= 3");
  if (n > kMaxDim) throw UnsupportedDimension("dimension above the supported maximum");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  TentacleParams p(n, beta, family, mode);
  for (int k = 1; k <= k_max; ++k) p.levels_.push_back(solve_level(k, p));
  return p;
}

double tentacle_seminorm_bound(const TentacleParams& p, int k) {
  const int n = p.n();
  if (n == 2) throw UnsupportedDimension("the closed-form bound needs n >= 3");
  const TentacleLevel& l = p.level(k);
  if (l.Delta == 0.0) return 0.0;
  const double log_shell =
      (2 - n) * std::log(l.d.u()) + std::log(-std::expm1(-(n - 2) * l.Delta));
  const double log_val = std::log(l.c_geom) + (p.beta() + 1.0) * k * (n - 1) * kLn2 +
                         log_shell - std::log(n - 2.0);
  return std::exp(log_val);
}

double tentacle_bulk_bound(const TentacleParams& p, int k) {
  const int n = p.n();
  const TentacleLevel& l = p.level(k);
  const double q = 0.5 * (n - 1);
  double slope = 0.0;
  for (double lam : {0.0, l.Delta}) {
    const PLKnots kn = l.knots(lam);
    for (int i = 0; i < 3; ++i) {
      slope = std::max(slope, (kn.s[i + 1] - kn.s[i]) / (kn.t[i + 1] - kn.t[i]));
    }
  }
  const double log_vol = std::log(l.t[3] - l.r_hat) + (n - 1) * (kLn2 - l.d.u());
  return std::exp((q - 1.0) * kLn2 + log_vol + q * std::log(n - 1 + slope * slope));
}

double tentacle_energy_reference(const TentacleParams& p, int k, int panels) {
  using boost::math::quadrature::gauss;
  const int n = p.n();
  const TentacleLevel& l = p.level(k);
  const double q = 0.5 * (n - 1);
  const double surface = (n - 1) * std::ldexp(1.0, n - 1);
  const double u_d = l.d.u();
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double len = l.t[i + 1] - l.t[i];
    auto slope_at = [&](double lam) {
      return (l.s0[i + 1] - l.s0[i] + lam * (l.ds[i + 1] - l.ds[i])) / len;
    };
    // Core |x_perp| < b: lambda = Delta, no transverse derivative.
    const double sl = slope_at(l.Delta);
    total += len * std::exp((n - 1) * (kLn2 - l.b.u())) * std::pow(sl * sl + n - 1, q);
    // Shell in lambda; r^{n-1} (A + B/(r u)^2)^q = (A r^2 + B/u^2)^q.
    auto shell = [&](double lam) {
      const double u = u_d * std::exp(lam);
      const double r2 = std::exp(-2.0 * u);
      const double s = slope_at(lam);
      const double a2 = s * s + n - 1;
      auto inner = [&](double theta) {
        const double g = (1.0 - theta) * l.ds[i] + theta * l.ds[i + 1];
        return std::pow(a2 * r2 + g * g / (u * u), q);
      };
      return surface * u * len * gauss<double, 20>::integrate(inner, 0.0, 1.0);
    };
    const double h = l.Delta / panels;
    for (int j = 0; j < panels; ++j) {
      total += gauss<double, 20>::integrate(shell, j * h, (j + 1) * h);
    }
  }
  return total;
}

double tentacle_union_log_measure(const TentacleParams& p, int k) {
  const int n = p.n();
  const TentacleLevel& l = p.level(k);
  const double shell =
      (n - 1) * (kLn2 - l.d.u()) + std::log(l.t[3] - l.r_hat);
  const double cube = n * std::log(2.0 * l.r_hat);
  return n * k * kLn2 + log_add(shell, cube);
}

// ---------------------------------------------------------------------------

StraightTentacleMap::StraightTentacleMap(TentacleParams params, int k)
    : params_(std::move(params)), k_(k) {
  if (k < 1 || k > params_.k_max()) throw std::invalid_argument("stage outside solved levels");
}

int StraightTentacleMap::level_of(const Vec& x) const {
  const double r = perp_norm(x);
  for (int j = k_; j >= 1; --j) {
    const TentacleLevel& l = params_.level(j);
    if (x(0) >= l.r_hat && x(0) < l.domain_end() && l.d.exceeds(r)) return j;
  }
  return 0;
}

Vec StraightTentacleMap::eval(const Vec& x) const {
  const int j = level_of(x);
  if (j == 0) return x;
  Vec y = x;
  y(0) = pl_interpolate(x(0), params_.level(j).knots(params_.lambda_from_radius(j, perp_norm(x))));
  return y;
}

Vec StraightTentacleMap::inverse(const Vec& y) const {
  const double r = perp_norm(y);
  for (int j = k_; j >= 1; --j) {
    const TentacleLevel& l = params_.level(j);
    if (y(0) >= l.r_hat && y(0) < l.image_end() && l.d.exceeds(r)) {
      Vec x = y;
      x(0) = pl_invert(y(0), l.knots(params_.lambda_from_radius(j, r)));
      return x;
    }
  }
  return y;
}

Mat StraightTentacleMap::derivative(const Vec& x) const {
  const int n = dim();
  Mat d = Mat::Identity(n, n);
  const int j = level_of(x);
  if (j == 0) return d;
  const TentacleLevel& l = params_.level(j);
  int m = 1;
  const double r = perp_norm(x, &m);
  const double lam = params_.lambda_from_radius(j, r);
  const PLKnots kn = l.knots(lam);
  const int i = pl_piece(x(0), kn);
  const double len = kn.t[i + 1] - kn.t[i];
  const double theta = (x(0) - kn.t[i]) / len;
  d(0, 0) = (kn.s[i + 1] - kn.s[i]) / len;
  const double dy_dlam = (1.0 - theta) * l.ds[i] + theta * l.ds[i + 1];
  d(0, m) = dy_dlam * params_.dlambda_dr(j, r) * (x(m) >= 0.0 ? 1.0 : -1.0);
  return d;
}

std::uint64_t StraightTentacleMap::piece(const Vec& x) const {
  const int j = level_of(x);
  std::uint64_t h = hash_mix(0, static_cast<std::uint64_t>(j));
  if (j == 0) return h;
  const TentacleLevel& l = params_.level(j);
  int m = 1;
  const double r = perp_norm(x, &m);
  const int zone = l.b.exceeds(r) ? 1 : 2;  // 1: core, 2: log shell
  h = hash_mix(h, static_cast<std::uint64_t>(zone));
  if (zone == 2) h = hash_mix(h, static_cast<std::uint64_t>(2 * m + (x(m) >= 0.0 ? 1 : 0)));
  return hash_mix(h, static_cast<std::uint64_t>(pl_piece(x(0), l.knots(0.0))));
}

// ---------------------------------------------------------------------------

ShiftMap::ShiftMap(TentacleParams params, std::vector<int> word)
    : params_(std::move(params)), word_(std::move(word)) {
  const int n = params_.n();
  for (int letter : word_) {
    if (letter < 0 || letter >= (1 << n)) throw InvalidAddress("tower letter out of range");
  }
  if (static_cast<int>(word_.size()) > params_.k_max() + 1) {
    throw InvalidAddress("word deeper than the solved levels");
  }
}

double ShiftMap::shift(double t) const {
  double total = 0.0;
  for (int l = 2; l <= static_cast<int>(word_.size()); ++l) {
    const double rp = params_.r_hat(l - 1);
    const double rl = params_.r_hat(l);
    const double ramp = std::clamp((t - rl) / (rp - rl), 0.0, 1.0);
    total += (rp - params_.level(l - 1).b.value()) * tower_vn(params_.n(), word_[l - 1]) * ramp;
  }
  return total;
}

Vec ShiftMap::eval(const Vec& x) const {
  Vec y = x;
  y(y.size() - 1) -= shift(x(0));
  return y;
}

Vec ShiftMap::inverse(const Vec& y) const {
  Vec x = y;
  x(x.size() - 1) += shift(y(0));
  return x;
}

Mat ShiftMap::derivative(const Vec& x) const {
  const int n = dim();
  Mat d = Mat::Identity(n, n);
  double slope = 0.0;
  for (int l = 2; l <= static_cast<int>(word_.size()); ++l) {
    const double rp = params_.r_hat(l - 1);
    const double rl = params_.r_hat(l);
    if (x(0) > rl && x(0) < rp) {
      slope += (rp - params_.level(l - 1).b.value()) * tower_vn(n, word_[l - 1]) / (rp - rl);
    }
  }
  d(n - 1, 0) = -slope;
  return d;
}

// ---------------------------------------------------------------------------

TentacleMap::TentacleMap(TentacleParams params, int k) : params_(std::move(params)), k_(k) {
  if (k < 0 || k > params_.k_max()) throw std::invalid_argument("stage outside solved levels");
}

double TentacleMap::ramp_weight(int l, double t, double* slope) const {
  if (l == 1) {
    if (slope != nullptr) *slope = 0.0;
    return 1.0;
  }
  const double rp = params_.r_hat(l - 1);
  const double rl = params_.r_hat(l);
  const double b = params_.level(l - 1).b.value();
  const double ramp = std::clamp((t - rl) / (rp - rl), 0.0, 1.0);
  if (slope != nullptr) *slope = (t > rl && t < rp) ? (b - rp) / (rp - rl) : 0.0;
  return rp * (1.0 - ramp) + b * ramp;
}

double TentacleMap::chart_offset(const std::vector<int>& word, double t) const {
  double total = 0.0;
  for (int l = 1; l <= static_cast<int>(word.size()); ++l) {
    total += tower_vn(params_.n(), word[l - 1]) * ramp_weight(l, t, nullptr);
  }
  return total;
}

double TentacleMap::chart_offset_slope(const std::vector<int>& word, double t) const {
  double total = 0.0;
  for (int l = 2; l <= static_cast<int>(word.size()); ++l) {
    double s = 0.0;
    ramp_weight(l, t, &s);
    total += tower_vn(params_.n(), word[l - 1]) * s;
  }
  return total;
}

Vec TentacleMap::chart_to_point(const std::vector<int>& word, const Vec& u) const {
  Vec x = u;
  x(x.size() - 1) += chart_offset(word, u(0));
  return x;
}

Vec TentacleMap::chart_forward(const std::vector<int>& word, const Vec& u) const {
  const int j = static_cast<int>(word.size());
  Vec y = u;
  y(0) = pl_interpolate(u(0), params_.level(j).knots(params_.lambda_from_radius(j, perp_norm(u))));
  return y;
}

Vec TentacleMap::chart_inverse(const std::vector<int>& word, const Vec& u) const {
  const int j = static_cast<int>(word.size());
  Vec x = u;
  x(0) = pl_invert(u(0), params_.level(j).knots(params_.lambda_from_radius(j, perp_norm(u))));
  return x;
}

TentacleMap::Hit TentacleMap::find(const Vec& x, bool image) const {
  const int n = dim();
  Hit hit;
  const double t = x(0);
  double other = 0.0;
  for (int i = 1; i + 1 < n; ++i) other = std::max(other, std::abs(x(i)));
  double un = x(n - 1);
  const int top = (1 << n) - 1;
  for (int j = 1; j <= k_; ++j) {
    const double w = ramp_weight(j, t, nullptr);
    const double f = std::round((un / w + 1.0) * std::ldexp(1.0, n - 1) - 0.5);
    const int letter = static_cast<int>(std::clamp(f, 0.0, static_cast<double>(top)));
    const double un_next = un - tower_vn(n, letter) * w;
    const double r = std::max(other, std::abs(un_next));
    const TentacleLevel& l = params_.level(j);
    const bool cube = std::abs(t) < l.r_hat && r < l.r_hat;
    const double end = image ? l.image_end() : l.domain_end();
    const bool shell = !cube && t >= l.r_hat && t < end && l.d.exceeds(r);
    if (!cube && !shell) break;
    hit.word.push_back(letter);
    hit.in_shell = shell;
    un = un_next;
  }
  hit.u = x;
  hit.u(n - 1) = un;
  return hit;
}

bool TentacleMap::in_top_shell(const Vec& x) const {
  const Hit h = find(x, false);
  return h.in_shell && static_cast<int>(h.word.size()) == k_;
}

Vec TentacleMap::eval(const Vec& x) const {
  const Hit h = find(x, false);
  if (!h.in_shell) return x;
  return chart_to_point(h.word, chart_forward(h.word, h.u));
}

Vec TentacleMap::inverse(const Vec& y) const {
  const Hit h = find(y, true);
  if (!h.in_shell) return y;
  return chart_to_point(h.word, chart_inverse(h.word, h.u));
}

Mat TentacleMap::derivative(const Vec& x) const {
  const int n = dim();
  Mat d = Mat::Identity(n, n);
  const Hit h = find(x, false);
  if (!h.in_shell) return d;
  const int j = static_cast<int>(h.word.size());
  const TentacleLevel& l = params_.level(j);
  int m = 1;
  const double r = perp_norm(h.u, &m);
  const PLKnots kn = l.knots(params_.lambda_from_radius(j, r));
  const int i = pl_piece(h.u(0), kn);
  const double len = kn.t[i + 1] - kn.t[i];
  const double theta = (h.u(0) - kn.t[i]) / len;
  const double y1 = kn.s[i] + (kn.s[i + 1] - kn.s[i]) * theta;
  d(0, 0) = (kn.s[i + 1] - kn.s[i]) / len;
  const double dy_dlam = (1.0 - theta) * l.ds[i] + theta * l.ds[i + 1];
  d(0, m) = dy_dlam * params_.dlambda_dr(j, r) * (h.u(m) >= 0.0 ? 1.0 : -1.0);
  // Chart change on both sides: u_n = x_n - T(x_1), y_n = u'_n + T(y_1).
  Mat pre = Mat::Identity(n, n);
  pre(n - 1, 0) = -chart_offset_slope(h.word, x(0));
  Mat post = Mat::Identity(n, n);
  post(n - 1, 0) = chart_offset_slope(h.word, y1);
  return post * d * pre;
}

std::uint64_t TentacleMap::piece(const Vec& x) const {
  const Hit h = find(x, false);
  std::uint64_t sig = 0;
  for (int letter : h.word) sig = hash_mix(sig, static_cast<std::uint64_t>(letter));
  sig = hash_mix(sig, h.in_shell ? 1u : 2u);
  if (!h.in_shell) return sig;
  const int j = static_cast<int>(h.word.size());
  const TentacleLevel& l = params_.level(j);
  int m = 1;
  const double r = perp_norm(h.u, &m);
  const int zone = l.b.exceeds(r) ? 1 : 2;  // 1: core, 2: log shell
  sig = hash_mix(sig, static_cast<std::uint64_t>(zone));
  if (zone == 2) sig = hash_mix(sig, static_cast<std::uint64_t>(2 * m + (h.u(m) >= 0.0 ? 1 : 0)));
  const PLKnots kn = l.knots(params_.lambda_from_radius(j, r));
  sig = hash_mix(sig, static_cast<std::uint64_t>(pl_piece(h.u(0), kn)));
  // Ramp intervals of x_1 and y_1 decide which chart slopes are active.
  const double y1 = pl_interpolate(h.u(0), kn);
  for (double t : {x(0), y1}) {
    int band = 0;
    for (int lv = 1; lv <= j; ++lv) {
      if (t > params_.r_hat(lv)) {
        band = lv;
        break;
      }
    }
    sig = hash_mix(sig, static_cast<std::uint64_t>(band));
  }
  return sig;
}

}  // namespace sobolev_cantor
