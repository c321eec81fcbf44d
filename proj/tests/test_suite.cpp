// Copyright 2026 The stabilab authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "stabilab/suite.hpp"

using namespace stabilab;

namespace {

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.N = 3;
  cfg.forbidden_sets = {"", "1"};
  cfg.depth_K = 3;
  cfg.base_depth_M = 1;
  cfg.depth_D = 4;
  cfg.weight_K_max = 4;
  cfg.seed = 7;
  cfg.op_count = 3;
  cfg.kaplansky_count = 4;
  cfg.intertwiner_count = 3;
  return cfg;
}

}  // namespace

TEST_CASE("small suite passes end to end", "[suite]") {
  Report report = run_suite(small_config());
  CHECK(report.all_pass());
  for (const Certificate& cert : report.certificates) {
    INFO(cert.name());
    CHECK(cert.pass());
    CHECK(cert.recompute_pass() == cert.pass());
  }
  CHECK(report.certificates.size() == report.timings.size());
}

TEST_CASE("identical config and seed give identical report bytes", "[suite]") {
  SuiteConfig cfg = small_config();
  Report first = run_suite(cfg);
  Report second = run_suite(cfg);
  CHECK(first.to_string() == second.to_string());

  // A different seed still passes but the echo differs.
  cfg.seed = 8;
  Report third = run_suite(cfg);
  CHECK(third.to_string() != first.to_string());
}

TEST_CASE("worker count does not change the report", "[suite]") {
  SuiteConfig cfg = small_config();
  cfg.families = {"measure", "bell"};
  cfg.workers = 1;
  Report serial = run_suite(cfg);
  cfg.workers = 8;
  Report parallel = run_suite(cfg);
  CHECK(serial.to_string() == parallel.to_string());
}

TEST_CASE("family selection narrows the battery", "[suite]") {
  SuiteConfig cfg = small_config();
  cfg.families = {"bell"};
  Report report = run_suite(cfg);
  CHECK(report.certificates.size() == 3);
  CHECK(report.all_pass());
}

TEST_CASE("configuration validation", "[suite]") {
  SuiteConfig bad = small_config();
  bad.N = 2;
  CHECK_THROWS_AS(bad.validate(), parse_error);
  SuiteConfig malformed = small_config();
  malformed.forbidden_sets = {"1,oops"};
  CHECK_THROWS_AS(malformed.validate(), parse_error);
  SuiteConfig shallow = small_config();
  shallow.depth_D = 1;
  CHECK_THROWS_AS(shallow.validate(), parse_error);
}

TEST_CASE("resource caps turn into skipped certificates", "[suite]") {
  SuiteConfig cfg = small_config();
  cfg.families = {"measure"};
  cfg.forbidden_sets = {"1"};
  cfg.cap = 8;  // far below any usable breakpoint budget
  Report report = run_suite(cfg);
  bool saw_skip = false;
  for (const Certificate& cert : report.certificates) saw_skip = saw_skip || cert.skipped();
  CHECK(saw_skip);
  CHECK_FALSE(report.all_pass());
}

TEST_CASE("report emission writes byte-stable files", "[suite]") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "stabilab_emit_test";
  fs::remove_all(dir);
  SuiteConfig cfg = small_config();
  cfg.families = {"bell"};
  cfg.emit_dir = (dir / "csv").string();
  cfg.report_path = (dir / "report.json").string();
  fs::create_directories(dir);

  Report report = run_suite(cfg);
  emit_report(report, cfg);
  REQUIRE(fs::exists(cfg.report_path));
  REQUIRE(fs::exists(fs::path(cfg.emit_dir) / "weights_N3_Bempty.csv"));
  REQUIRE(fs::exists(fs::path(cfg.emit_dir) / "cdf_nu_N3_B1.csv"));

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::string first = slurp(cfg.report_path);
  emit_report(report, cfg);
  CHECK(first == slurp(cfg.report_path));

  // The CDF companion has one data row per breakpoint.
  MeasureSpec spec{parse_forbidden("1", 3), MeasureKind::nu, cfg.depth_K, cfg.base_depth_M,
                   false, cfg.cap};
  std::size_t breakpoints = build_cdf(spec).breakpoints().size();
  std::string csv = slurp(fs::path(cfg.emit_dir) / "cdf_nu_N3_B1.csv");
  std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == breakpoints + 1);

  fs::remove_all(dir);
}

TEST_CASE("certificate JSON carries recomputable exact data", "[suite]") {
  Certificate cert = weight_normalization_certificate(parse_forbidden("1", 3), 3, 3);
  auto j = cert.to_json();
  CHECK(j["name"] == "weight_normalization");
  CHECK(j["pass"] == true);
  REQUIRE(!j["checks"].empty());
  for (const auto& check : j["checks"]) {
    Rat lhs(Int(check["lhs"]["num"].get<std::string>()),
            Int(check["lhs"]["den"].get<std::string>()));
    Rat rhs(Int(check["rhs"]["num"].get<std::string>()),
            Int(check["rhs"]["den"].get<std::string>()));
    lhs.canonicalize();
    rhs.canonicalize();
    CHECK(relation_holds(lhs, check["rel"].get<std::string>(), rhs) ==
          check["ok"].get<bool>());
  }
}
