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

#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sobolev_cantor::cli {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error(message), field_(std::move(field)), line_(line) {}

std::vector<int> RunConfig::stages() const {
  if (stage) return {*stage};
  std::vector<int> ks;
  for (int k = 1; k <= max_stage; ++k) ks.push_back(k);
  return ks;
}

namespace {

using nlohmann::json;

int line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

// Walks a parsed document and reports errors with the line of the offending
// key. Keys are located textually, each one searched after its parent.
class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ConfigError(field, line_of(field), "field '" + field + "': " + message);
  }

  int line_of(const std::string& field) const {
    std::size_t pos = 0;
    std::stringstream parts(field);
    std::string part;
    while (std::getline(parts, part, '.')) {
      const std::size_t bracket = part.find('[');
      if (bracket != std::string::npos) part.resize(bracket);
      const std::size_t hit = text_.find('"' + part + '"', pos);
      if (hit == std::string::npos) return 0;
      pos = hit;
    }
    return line_at(text_, pos);
  }

  void only(const json& obj, const std::string& path, std::set<std::string> allowed) const {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(join(path, key), "unknown field");
    }
  }

  const json* child(const json& obj, const std::string& key) const {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  double number(const json& obj, const std::string& path, const std::string& key,
                double fallback) const {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) fail(join(path, key), "expected a number");
    return v->get<double>();
  }

  long long integer(const json& obj, const std::string& path, const std::string& key,
                    long long fallback) const {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(join(path, key), "expected an integer");
    return v->get<long long>();
  }

  std::string string(const json& obj, const std::string& path, const std::string& key,
                     const std::string& fallback) const {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(join(path, key), "expected a string");
    return v->get<std::string>();
  }

  const json* object(const json& obj, const std::string& path, const std::string& key) const {
    const json* v = child(obj, key);
    if (v && !v->is_object()) fail(join(path, key), "expected an object");
    return v;
  }

  Vec vec(const json& v, const std::string& field) const {
    if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of numbers");
    Vec out(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(field, "expected a non-empty array of numbers");
      out(static_cast<int>(i)) = v[i].get<double>();
    }
    return out;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  const std::string& text_;
};

Variant variant_of(const Reader& r, const std::string& s) {
  try {
    return parse_variant(s);
  } catch (const std::exception&) {
    r.fail("variant", "expected one of T1, T2, W, FL");
  }
}

void check(const Reader& r, const RunConfig& c) {
  if (c.n != 2 && c.n != 3) r.fail("n", "must be 2 or 3");
  if (c.n == 2 && c.degree_map == "stage") {
    r.fail("n", "stage maps need n = 3; n = 2 is for planar degree fixtures");
  }
  if (!(c.beta >= c.n + 1)) r.fail("beta", "must be at least n + 1");
  if (c.max_stage < 1 || c.max_stage > 8) r.fail("max_stage", "must be in 1..8");
  if (c.stage && (*c.stage < 1 || *c.stage > 8)) r.fail("stage", "must be in 1..8");
  if (c.schedule == ScheduleMode::Strict && c.variant != Variant::T1 &&
      c.variant != Variant::T2) {
    r.fail("schedule_mode", "strict schedules exist for T1 and T2 only");
  }
  try {
    c.quadrature.validate();
  } catch (const std::invalid_argument& e) {
    r.fail("quadrature", e.what());
  }
  if (c.checks.samples == 0) r.fail("checks.samples", "must be positive");
  if (c.checks.per_face == 0) r.fail("checks.per_face", "must be positive");
  if (!(c.checks.fd_step > 0.0 && c.checks.fd_step < 1e-3)) {
    r.fail("checks.fd_step", "must be in (0, 1e-3)");
  }
  if (c.witness.samples < 2) r.fail("witness.samples", "must be at least 2");
  for (int letter : c.witness.word) {
    if (c.n == 3 && (letter < 0 || letter >= 8)) r.fail("witness.word", "letters must be in [0, 8)");
  }
  if (c.slice.axis_u < 0 || c.slice.axis_u >= c.n || c.slice.axis_v < 0 ||
      c.slice.axis_v >= c.n || c.slice.axis_u == c.slice.axis_v) {
    r.fail("slice.axes", "expected two distinct axes below n");
  }
  if (c.slice.grid < 2) r.fail("slice.grid", "must be at least 2");
  if (!(std::abs(c.slice.offset) <= 1.0)) r.fail("slice.offset", "must be in [-1, 1]");
  static const std::set<std::string> maps{"stage", "identity", "antipodal", "scale2", "reflect",
                                          "square"};
  if (!maps.count(c.degree_map)) r.fail("degree.map", "unknown map");
  if (c.degree_map == "square" && c.n != 2) r.fail("degree.map", "square needs n = 2");
  if (c.degree_start_level < 0 || c.degree_start_level > c.degree.max_level) {
    r.fail("degree.start_level", "must be in [0, max_level]");
  }
  if (c.degree.max_level > 10) r.fail("degree.max_level", "must be at most 10");
  if (!(c.degree.snap > 0.0 && c.degree.snap < 0.5)) r.fail("degree.snap", "must be in (0, 0.5)");
  if (!(c.degree.stability > 0.0)) r.fail("degree.stability", "must be positive");
  if (c.degree.stable_steps < 1) r.fail("degree.stable_steps", "must be at least 1");
  for (std::size_t i = 0; i < c.probes.size(); ++i) {
    const ProbeConfig& p = c.probes[i];
    const std::string field = "degree.probes[" + std::to_string(i) + "]";
    if (p.center.size() != c.n) r.fail(field + ".center", "needs n coordinates");
    if (p.y && p.y->size() != c.n) r.fail(field + ".y", "needs n coordinates");
    if (!(p.radius > 0.0)) r.fail(field + ".radius", "must be positive");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", line_at(text, e.byte == 0 ? 0 : e.byte - 1),
                      std::string("malformed JSON: ") + e.what());
  }
  const Reader r(text);
  if (!doc.is_object()) throw ConfigError("", 1, "config must be a JSON object");
  r.only(doc, "",
         {"n", "beta", "variant", "schedule_mode", "max_stage", "stage", "seed", "output_dir",
          "workers", "quadrature", "checks", "witness", "slice", "degree"});

  RunConfig c;
  c.n = static_cast<int>(r.integer(doc, "", "n", c.n));
  c.beta = r.number(doc, "", "beta", c.beta);
  c.variant = variant_of(r, r.string(doc, "", "variant", to_string(c.variant)));
  const std::string mode = r.string(doc, "", "schedule_mode", "demo");
  if (mode == "strict") {
    c.schedule = ScheduleMode::Strict;
  } else if (mode != "demo") {
    r.fail("schedule_mode", "expected strict or demo");
  }
  c.max_stage = static_cast<int>(r.integer(doc, "", "max_stage", c.max_stage));
  if (doc.contains("stage")) c.stage = static_cast<int>(r.integer(doc, "", "stage", 1));
  const long long seed = r.integer(doc, "", "seed", 1);
  if (seed < 0) r.fail("seed", "must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.output_dir = r.string(doc, "", "output_dir", c.output_dir);
  const long long workers = r.integer(doc, "", "workers", 0);
  if (workers < 0) r.fail("workers", "must be nonnegative");
  c.workers = static_cast<unsigned>(workers);

  if (const json* q = r.object(doc, "", "quadrature")) {
    r.only(*q, "quadrature", {"resolution", "refinement_depth", "fd_relative_step", "time_budget"});
    c.quadrature.resolution =
        static_cast<int>(r.integer(*q, "quadrature", "resolution", c.quadrature.resolution));
    c.quadrature.refinement_depth = static_cast<int>(
        r.integer(*q, "quadrature", "refinement_depth", c.quadrature.refinement_depth));
    c.quadrature.fd_relative_step =
        r.number(*q, "quadrature", "fd_relative_step", c.quadrature.fd_relative_step);
    c.quadrature.time_budget = r.number(*q, "quadrature", "time_budget", 0.0);
  }
  c.quadrature.seed = c.seed;

  if (const json* ch = r.object(doc, "", "checks")) {
    r.only(*ch, "checks", {"samples", "per_face", "fd_step"});
    const long long samples = r.integer(*ch, "checks", "samples", 10000);
    const long long per_face = r.integer(*ch, "checks", "per_face", 1000);
    if (samples < 0) r.fail("checks.samples", "must be positive");
    if (per_face < 0) r.fail("checks.per_face", "must be positive");
    c.checks.samples = static_cast<std::size_t>(samples);
    c.checks.per_face = static_cast<std::size_t>(per_face);
    c.checks.fd_step = r.number(*ch, "checks", "fd_step", c.checks.fd_step);
  }

  if (const json* w = r.object(doc, "", "witness")) {
    r.only(*w, "witness", {"word", "samples"});
    if (const json* word = r.child(*w, "word")) {
      if (!word->is_array() || word->empty()) r.fail("witness.word", "expected letters");
      c.witness.word.clear();
      for (const json& l : *word) {
        if (!l.is_number_integer()) r.fail("witness.word", "expected integer letters");
        c.witness.word.push_back(l.get<int>());
      }
    }
    c.witness.samples = static_cast<int>(r.integer(*w, "witness", "samples", c.witness.samples));
  }

  if (const json* s = r.object(doc, "", "slice")) {
    r.only(*s, "slice", {"axes", "offset", "grid"});
    if (const json* axes = r.child(*s, "axes")) {
      if (!axes->is_array() || axes->size() != 2 || !(*axes)[0].is_number_integer() ||
          !(*axes)[1].is_number_integer()) {
        r.fail("slice.axes", "expected two integer axes");
      }
      c.slice.axis_u = (*axes)[0].get<int>();
      c.slice.axis_v = (*axes)[1].get<int>();
    } else if (c.n == 2) {
      c.slice.axis_v = 1;
    }
    c.slice.offset = r.number(*s, "slice", "offset", c.slice.offset);
    c.slice.grid = static_cast<int>(r.integer(*s, "slice", "grid", c.slice.grid));
  } else if (c.n == 2) {
    c.slice.axis_v = 1;
  }

  if (const json* d = r.object(doc, "", "degree")) {
    r.only(*d, "degree",
           {"map", "max_level", "start_level", "snap", "stability", "stable_steps",
            "min_distance", "near_tolerance", "probes"});
    c.degree_map = r.string(*d, "degree", "map", c.degree_map);
    c.degree.max_level = static_cast<int>(r.integer(*d, "degree", "max_level", c.degree.max_level));
    c.degree_start_level =
        static_cast<int>(r.integer(*d, "degree", "start_level", c.degree_start_level));
    c.degree.snap = r.number(*d, "degree", "snap", c.degree.snap);
    c.degree.stability = r.number(*d, "degree", "stability", c.degree.stability);
    c.degree.stable_steps =
        static_cast<int>(r.integer(*d, "degree", "stable_steps", c.degree.stable_steps));
    c.degree.min_distance = r.number(*d, "degree", "min_distance", c.degree.min_distance);
    c.degree.near_tolerance = r.number(*d, "degree", "near_tolerance", c.degree.near_tolerance);
    if (const json* probes = r.child(*d, "probes")) {
      if (!probes->is_array()) r.fail("degree.probes", "expected an array");
      for (std::size_t i = 0; i < probes->size(); ++i) {
        const json& p = (*probes)[i];
        const std::string field = "degree.probes[" + std::to_string(i) + "]";
        if (!p.is_object()) r.fail(field, "expected an object");
        r.only(p, field, {"center", "radius", "y"});
        ProbeConfig probe;
        const json* center = r.child(p, "center");
        if (!center) r.fail(field + ".center", "missing");
        probe.center = r.vec(*center, field + ".center");
        probe.radius = r.number(p, field, "radius", probe.radius);
        if (const json* y = r.child(p, "y")) probe.y = r.vec(*y, field + ".y");
        c.probes.push_back(probe);
      }
    }
  }
  check(r, c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const RunConfig& config) {
  const std::string empty;
  check(Reader(empty), config);
}

}  // namespace sobolev_cantor::cli
