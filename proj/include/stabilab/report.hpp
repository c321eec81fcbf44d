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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "stabilab/certificate.hpp"
#include "stabilab/config.hpp"
#include "stabilab/measures.hpp"

namespace stabilab {

struct Report {
  std::string tool_version = kToolVersion;
  SuiteConfig config;
  std::vector<Certificate> certificates;
  /// Wall-clock seconds per certificate. Kept out of the serialized report
  /// unless explicitly requested, so identical config and seed give
  /// byte-identical report files.
  std::vector<std::pair<std::string, double>> timings;

  bool all_pass() const {
    for (const auto& c : certificates)
      if (!c.pass()) return false;
    return !certificates.empty();
  }

  nlohmann::ordered_json to_json(bool with_timings = false) const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["config"] = config.to_json();
    auto certs = nlohmann::ordered_json::array();
    for (const auto& c : certificates) certs.push_back(c.to_json());
    j["certificates"] = std::move(certs);
    j["all_pass"] = all_pass();
    if (with_timings) {
      auto t = nlohmann::ordered_json::array();
      for (const auto& [name, seconds] : timings)
        t.push_back(nlohmann::ordered_json{{"name", name}, {"seconds", seconds}});
      j["timings"] = std::move(t);
    }
    return j;
  }

  std::string to_string(bool with_timings = false) const {
    return to_json(with_timings).dump(2) + "\n";
  }
};

/// Writes the JSON report and, when an emission directory is configured, the
/// CSV companions for the weight tables and CDF approximants of every
/// configured forbidden set.
inline void emit_report(const Report& report, const SuiteConfig& cfg) {
  namespace fs = std::filesystem;
  if (!cfg.report_path.empty()) {
    std::ofstream out(cfg.report_path, std::ios::binary);
    if (!out) throw emit_error("cannot open report path: " + cfg.report_path);
    out << report.to_string(cfg.include_timings);
    if (!out) throw emit_error("failed writing report: " + cfg.report_path);
  }
  if (cfg.emit_dir.empty()) return;
  std::error_code ec;
  fs::create_directories(cfg.emit_dir, ec);
  if (ec) throw emit_error("cannot create emission directory: " + cfg.emit_dir);
  for (const std::string& fstr : cfg.forbidden_sets) {
    ForbiddenSet B = parse_forbidden(fstr, cfg.N);
    std::string tag = "N" + std::to_string(cfg.N) + "_B" + (fstr.empty() ? "empty" : fstr);
    for (char& ch : tag)
      if (ch == ',') ch = '-';
    {
      std::ofstream out(fs::path(cfg.emit_dir) / ("weights_" + tag + ".csv"), std::ios::binary);
      if (!out) throw emit_error("cannot open weights CSV for " + tag);
      WeightTable table(B);
      write_weights_csv(out, table, std::min(cfg.weight_K_max, 6));
    }
    {
      std::ofstream out(fs::path(cfg.emit_dir) / ("cdf_nu_" + tag + ".csv"), std::ios::binary);
      if (!out) throw emit_error("cannot open CDF CSV for " + tag);
      MeasureSpec spec{B, MeasureKind::nu, cfg.depth_K, cfg.base_depth_M, false, cfg.cap};
      write_cdf_csv(out, build_cdf(spec));
    }
  }
}

}  // namespace stabilab
