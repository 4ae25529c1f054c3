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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "sobolev_cantor/parallel.hpp"

namespace sobolev_cantor::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_vec(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_double(v(i));
  }
  return s;
}

class Csv {
 public:
  Csv(const RunConfig& config, const std::string& name, const std::vector<std::string>& header)
      : path_(std::filesystem::path(config.output_dir) / name) {
    std::filesystem::create_directories(config.output_dir);
    out_.open(path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot write " + path_.string());
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string num(double v) { return format_double(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_stage_maps(const RunConfig& c) {
  if (c.n != 3) throw UsageError("stage maps need n = 3");
}

TentacleFamily family_of(Variant v) {
  switch (v) {
    case Variant::T1:
      return TentacleFamily::Squeeze;
    case Variant::T2:
    case Variant::W:
      return TentacleFamily::Stretch;
    case Variant::FL:
      break;
  }
  throw UsageError("FL has no tentacle parameters");
}

int cmd_params(const RunConfig& c, std::ostream& log) {
  require_stage_maps(c);
  const int k_max = c.last_stage();
  const TentacleParams p = TentacleParams::solve(c.n, c.beta, family_of(c.variant), c.schedule, k_max);
  Csv csv(c, "params.csv",
          {"k", "r_hat", "a", "c", "a_tilde", "c_tilde", "A", "Delta", "u_b", "u_d", "loglog_b",
           "loglog_d", "c_fixd", "delta", "delta_tilde"});
  for (int k = 1; k <= k_max; ++k) {
    const TentacleLevel& l = p.level(k);
    csv.row({num(k), num(l.r_hat), num(l.a), num(l.c), num(l.a_tilde), num(l.c_tilde), num(l.A),
             num(l.Delta), num(l.b.u()), num(l.d.u()), num(l.b.loglog()), num(l.d.loglog()),
             num(l.c_fixd), num(l.delta), num(l.delta_tilde)});
  }
  log << "params: " << k_max << " levels -> " << csv.path().string() << '\n';
  return kOk;
}

int cmd_verify_sobolev(const RunConfig& c, std::ostream& log) {
  require_stage_maps(c);
  const int k_max = c.last_stage();
  if (c.schedule == ScheduleMode::Strict) {
    const TentacleParams p =
        TentacleParams::solve(c.n, c.beta, family_of(c.variant), ScheduleMode::Strict, k_max);
    // 2^{k beta e} delta_tilde_k = k^-2, with e = n-1 (T1) or 2n-1 (T2).
    const double e = c.variant == Variant::T1 ? c.n - 1 : 2 * c.n - 1;
    Csv csv(c, "sobolev_bound.csv", {"k", "u_b", "u_d", "bound", "delta", "envelope", "pass"});
    bool all = true;
    double envelope_sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      const TentacleLevel& l = p.level(k);
      const double bound = tentacle_seminorm_bound(p, k);
      const double envelope = std::exp2(k * c.beta * e) * l.delta_tilde;
      const bool pass = bound <= l.delta;
      all = all && pass;
      envelope_sum += envelope;
      csv.row({num(k), num(l.b.u()), num(l.d.u()), num(bound), num(l.delta), num(envelope),
               flag(pass)});
    }
    log << "verify-sobolev (strict): " << (all ? "all bounds below delta" : "bound exceeds delta")
        << ", envelope sum " << num(envelope_sum) << " -> " << csv.path().string() << '\n';
    return all ? kOk : kAssertionFailed;
  }
  if (c.variant != Variant::T1 && c.variant != Variant::T2) {
    throw UsageError("the demo Cauchy table is defined for T1 and T2");
  }
  const CauchyTable t = cauchy_table(c.variant, c.n, c.beta, k_max, c.quadrature);
  Csv csv(c, "cauchy_table.csv",
          {"k", "cells", "tentacles", "integral", "refined", "relative_change", "envelope", "pass"});
  for (const CauchyRow& r : t.rows) {
    csv.row({num(r.k), num(r.cells), num(r.tentacles), num(r.integral), num(r.refined),
             num(r.relative_change), num(r.envelope), flag(r.pass)});
  }
  log << "verify-sobolev (demo): c = " << num(t.c) << ", positive " << t.positive
      << ", decreasing " << t.decreasing << ", consistent " << t.consistent << ", complete "
      << t.complete << " -> " << csv.path().string() << '\n';
  return t.pass() ? kOk : kAssertionFailed;
}

int cmd_verify_jacobian(const RunConfig& c, std::ostream& log) {
  require_stage_maps(c);
  Csv csv(c, "jacobian.csv",
          {"k", "samples", "positive", "fraction", "min_det", "nonpositive", "near_interface",
           "pass"});
  bool all = true;
  for (int k : c.stages()) {
    const CompositeStage f(c.variant, c.n, c.beta, k);
    const JacobianSurvey s = jacobian_survey(f, c.checks.samples, c.checks.fd_step, c.seed);
    const bool pass = s.fraction >= 0.999 && s.exceptions_localized();
    all = all && pass;
    csv.row({num(k), num(s.samples), num(s.positive), num(s.fraction), num(s.min_det),
             num(s.nonpositive.size()), num(s.near_interface), flag(pass)});
  }
  log << "verify-jacobian: " << (all ? "pass" : "FAIL") << " -> " << csv.path().string() << '\n';
  return all ? kOk : kAssertionFailed;
}

int cmd_verify_boundary(const RunConfig& c, std::ostream& log) {
  require_stage_maps(c);
  Csv csv(c, "boundary.csv", {"k", "samples", "max_deviation", "pass"});
  bool all = true;
  for (int k : c.stages()) {
    const CompositeStage f(c.variant, c.n, c.beta, k);
    const BoundaryReport b = boundary_identity_check(f, c.checks.per_face, c.seed);
    all = all && b.pass;
    csv.row({num(k), num(b.samples), num(b.max_deviation), flag(b.pass)});
  }
  log << "verify-boundary: " << (all ? "pass" : "FAIL") << " -> " << csv.path().string() << '\n';
  return all ? kOk : kAssertionFailed;
}

int cmd_witness(const RunConfig& c, std::ostream& log) {
  require_stage_maps(c);
  if (c.variant == Variant::FL) throw UsageError("witness is defined for T1, T2 and W");
  Csv csv(c, "witness.csv",
          {"stage", "endpoint_distance", "image_diameter", "cell_center_error"});
  bool all = true;
  double previous = INFINITY;
  for (int k : c.stages()) {
    const CompositeStage f(c.variant, c.n, c.beta, k);
    const ContinuumWitness w = continuum_witness(f, c.witness.word, c.witness.samples);
    all = all && w.endpoint_distance >= 0.5 && w.image_diameter < previous;
    previous = w.image_diameter;
    csv.row({num(k), num(w.endpoint_distance), num(w.image_diameter), num(w.cell_center_error)});
  }
  log << "witness: " << (all ? "separated endpoints, shrinking images" : "FAIL") << " -> "
      << csv.path().string() << '\n';
  return all ? kOk : kAssertionFailed;
}

PointMap fixture(const std::string& name, int n) {
  if (name == "identity") return [](const Vec& x) { return x; };
  if (name == "antipodal") return [](const Vec& x) -> Vec { return -x; };
  if (name == "scale2") return [](const Vec& x) -> Vec { return 2.0 * x; };
  if (name == "reflect") {
    return [](const Vec& x) {
      Vec y = x;
      y(0) = -y(0);
      return y;
    };
  }
  if (name == "square" && n == 2) {
    return [](const Vec& x) {
      Vec y(2);
      y << x(0) * x(0) - x(1) * x(1), 2.0 * x(0) * x(1);
      return y;
    };
  }
  throw UsageError("unknown degree map " + name);
}

int cmd_degree(const RunConfig& c, std::ostream& log) {
  std::vector<ProbeConfig> probes = c.probes;
  if (probes.empty()) {
    ProbeConfig p;
    p.center = Vec::Zero(c.n);
    if (c.degree_map == "stage") p.center(0) = -0.5, p.center(1) = 0.5;
    probes.push_back(p);
  }
  Csv csv(c, "degree.csv", {"k", "a", "r", "y", "degree", "raw", "refinements"});
  auto emit = [&](int k, const ProbeConfig& p, const Vec& y, const DegreeReport& d) {
    csv.row({num(k), format_vec(p.center), num(p.radius), format_vec(y), num(d.degree),
             num(d.raw), num(d.refinements)});
  };
  try {
    if (c.degree_map != "stage") {
      const PointMap f = fixture(c.degree_map, c.n);
      for (const ProbeConfig& p : probes) {
        const Vec y = p.y.value_or(f(p.center));
        emit(0, p, y, degree(f, SphereProbe{p.center, p.radius, c.degree_start_level}, y, c.degree));
      }
      log << "degree: " << probes.size() << " probes of " << c.degree_map << " -> "
          << csv.path().string() << '\n';
      return kOk;
    }
    require_stage_maps(c);
    // The default y is the image of the center under stage 1, so the same y
    // is tested at every stage.
    const CompositeStage first(c.variant, c.n, c.beta, 1);
    std::map<std::size_t, int> seen;
    bool constant = true;
    for (int k : c.stages()) {
      const CompositeStage f(c.variant, c.n, c.beta, k);
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const ProbeConfig& p = probes[i];
        const Vec y = p.y.value_or(first.eval(p.center));
        const DegreeReport d =
            degree(f, SphereProbe{p.center, p.radius, c.degree_start_level}, y, c.degree);
        emit(k, p, y, d);
        const auto [it, fresh] = seen.emplace(i, d.degree);
        constant = constant && (fresh || it->second == d.degree);
      }
    }
    log << "degree: " << (constant ? "constant over stages" : "degree changes between stages")
        << " -> " << csv.path().string() << '\n';
    return constant ? kOk : kAssertionFailed;
  } catch (const IndeterminateDegree& e) {
    log << "degree: indeterminate: " << e.what() << '\n';
    return kIndeterminate;
  }
}

int cmd_export_slice(const RunConfig& c, std::ostream& log) {
  require_stage_maps(c);
  const int k = c.last_stage();
  const CompositeStage f(c.variant, c.n, c.beta, k);
  std::vector<std::string> header{"i", "j"};
  for (int a = 0; a < c.n; ++a) header.push_back("x" + std::to_string(a));
  for (int a = 0; a < c.n; ++a) header.push_back("y" + std::to_string(a));
  const int m = c.slice.grid;
  const std::size_t count = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  std::vector<Vec> xs(count), ys(count);
  parallel_for(count, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / m;
    const int j = static_cast<int>(idx) % m;
    Vec x = Vec::Constant(c.n, c.slice.offset);
    x(c.slice.axis_u) = -1.0 + 2.0 * i / (m - 1);
    x(c.slice.axis_v) = -1.0 + 2.0 * j / (m - 1);
    xs[idx] = x;
    ys[idx] = f.eval(x);
  });
  Csv csv(c, "slice.csv", header);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<std::string> row{num(static_cast<int>(idx) / m), num(static_cast<int>(idx) % m)};
    for (int a = 0; a < c.n; ++a) row.push_back(num(xs[idx](a)));
    for (int a = 0; a < c.n; ++a) row.push_back(num(ys[idx](a)));
    csv.row(row);
  }
  log << "export-slice: stage " << k << ", " << count << " points -> " << csv.path().string()
      << '\n';
  return kOk;
}

using Command = std::function<int(const RunConfig&, std::ostream&)>;

const std::map<std::string, Command>& table() {
  static const std::map<std::string, Command> t{
      {"params", cmd_params},
      {"verify-sobolev", cmd_verify_sobolev},
      {"verify-jacobian", cmd_verify_jacobian},
      {"verify-boundary", cmd_verify_boundary},
      {"witness", cmd_witness},
      {"degree", cmd_degree},
      {"export-slice", cmd_export_slice},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, cmd] : table()) v.push_back(name);
    return v;
  }();
  return names;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& log) {
  const auto it = table().find(command);
  if (it == table().end()) {
    log << "unknown command " << command << '\n';
    return kConfigError;
  }
  set_worker_count(config.workers);
  try {
    return it->second(config, log);
  } catch (const UsageError& e) {
    log << command << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const IndeterminateDegree& e) {
    log << command << ": indeterminate: " << e.what() << '\n';
    return kIndeterminate;
  }
}

}  // namespace sobolev_cantor::cli
