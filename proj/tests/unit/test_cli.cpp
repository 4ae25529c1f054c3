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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "run_config.hpp"

namespace sobolev_cantor::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sobolev_cantor_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Config, Defaults) {
  const RunConfig c = parse_config("{}");
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.beta, 4.0);
  EXPECT_EQ(c.variant, Variant::T1);
  EXPECT_EQ(c.stages(), std::vector<int>({1, 2, 3}));
}

TEST(Config, ErrorsCarryLineAndField) {
  try {
    parse_config("{\n  \"n\": 3,\n  \"beta\": 2.5\n}\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "beta");
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_config("{\n  \"degree\": {\n    \"probes\": [{\"center\": [0, 0], \"radius\": 1}]\n  }\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "degree.probes[0].center");
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_config("{\n  \"n\": 3,\n  \"varient\": \"T1\"\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "varient");
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_config("{\n  \"n\": 3\n  \"beta\": 4\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_config("{\"variant\": \"T9\"}"), ConfigError);
  EXPECT_THROW(parse_config("{\"schedule_mode\": \"strict\", \"variant\": \"FL\"}"), ConfigError);
  EXPECT_THROW(parse_config("{\"quadrature\": {\"resolution\": 2}}"), ConfigError);
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(Commands, StrictParamsRow) {
  RunConfig c = parse_config(R"({"schedule_mode": "strict", "max_stage": 2})");
  c.output_dir = scratch("params").string();
  std::ostringstream log;
  ASSERT_EQ(run_command("params", c, log), kOk);
  const std::string csv = slurp(fs::path(c.output_dir) / "params.csv");
  EXPECT_EQ(csv.rfind("k,r_hat,a,c,", 0), 0u);
  EXPECT_NE(csv.find("\n1,0.03125,0.998992919921875,"), std::string::npos);
}

TEST(Commands, BoundaryExitCode) {
  RunConfig c = parse_config(R"({"max_stage": 3, "checks": {"per_face": 50}})");
  c.output_dir = scratch("boundary").string();
  std::ostringstream log;
  EXPECT_EQ(run_command("verify-boundary", c, log), kOk);
  const std::string csv = slurp(fs::path(c.output_dir) / "boundary.csv");
  EXPECT_NE(csv.find("3,300,0,1"), std::string::npos);
}

TEST(Commands, IdentityDegreeRow) {
  RunConfig c = parse_config(R"({"degree": {"map": "identity"}})");
  c.output_dir = scratch("degree").string();
  std::ostringstream log;
  ASSERT_EQ(run_command("degree", c, log), kOk);
  const std::string csv = slurp(fs::path(c.output_dir) / "degree.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,a,r,y,degree,raw,refinements");
  EXPECT_NE(csv.find(",0.29999999999999999,0;0;0,1,"), std::string::npos);
}

TEST(Commands, IndeterminateDegreeExitCode) {
  RunConfig c = parse_config(
      R"({"degree": {"map": "identity", "probes": [{"center": [0, 0, 0], "radius": 1, "y": [1, 0, 0]}]}})");
  c.output_dir = scratch("indeterminate").string();
  std::ostringstream log;
  EXPECT_EQ(run_command("degree", c, log), kIndeterminate);
}

TEST(Commands, UnsupportedCombinationIsConfigError) {
  RunConfig c = parse_config(R"({"variant": "FL"})");
  c.output_dir = scratch("fl").string();
  std::ostringstream log;
  EXPECT_EQ(run_command("witness", c, log), kConfigError);
  EXPECT_EQ(run_command("nope", c, log), kConfigError);
}

TEST(Commands, RerunsAreByteIdentical) {
  RunConfig c = parse_config(R"({"max_stage": 2, "checks": {"samples": 500}, "slice": {"grid": 9}})");
  for (const std::string cmd : {"verify-jacobian", "export-slice", "witness"}) {
    c.output_dir = scratch("rerun_a").string();
    std::ostringstream log;
    ASSERT_EQ(run_command(cmd, c, log), kOk) << cmd;
    const fs::path first = *fs::directory_iterator(c.output_dir);
    const std::string a = slurp(first);
    c.output_dir = scratch("rerun_b").string();
    ASSERT_EQ(run_command(cmd, c, log), kOk) << cmd;
    EXPECT_EQ(a, slurp(fs::path(c.output_dir) / first.filename())) << cmd;
  }
}

}  // namespace
}  // namespace sobolev_cantor::cli
