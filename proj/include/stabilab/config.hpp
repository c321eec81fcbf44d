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

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "stabilab/errors.hpp"
#include "stabilab/words.hpp"

namespace stabilab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a suite run depends on. Echoed verbatim into reports so every
/// pass flag can be reproduced from the report alone.
struct SuiteConfig {
  int N = 3;
  std::vector<std::string> forbidden_sets = {"", "1"};  // one measure battery each
  int depth_K = 5;        // W1 chain depth
  int base_depth_M = 2;   // inner approximant depth
  int depth_D = 5;        // translation/continuity/circle sweep depth
  int weight_K_max = 6;   // normalization/decay sweep depth
  unsigned jn_n = 2;      // block-root order for shift/diag decisions
  std::uint64_t seed = 42;
  int op_size = 4;
  int op_count = 10;
  int kaplansky_count = 20;
  int intertwiner_count = 10;
  std::vector<std::string> shift_inputs = {"bilateral;", "bilateral;0:2", "bilateral;0:2,5:3"};
  std::vector<std::string> diag_inputs = {};
  std::vector<std::string> families = {"measure", "op", "shift", "diag", "bell"};
  std::string emit_dir;     // empty: no CSV companions
  std::string report_path;  // empty: stdout only
  std::uint64_t cap = kDefaultEnumerationCap;
  int workers = 0;  // 0: environment variable, then hardware
  bool include_timings = false;

  void validate() const {
    if (N < 3) throw parse_error("base N must be at least 3");
    if (depth_K < 0 || base_depth_M < 0 || depth_D < 2 || weight_K_max < 0)
      throw parse_error("depths out of range");
    if (jn_n < 2) throw parse_error("block-root order must be at least 2");
    for (const auto& f : forbidden_sets) parse_forbidden(f, N);  // throws on malformed input
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["N"] = N;
    j["forbidden_sets"] = forbidden_sets;
    j["depth_K"] = depth_K;
    j["base_depth_M"] = base_depth_M;
    j["depth_D"] = depth_D;
    j["weight_K_max"] = weight_K_max;
    j["jn_n"] = jn_n;
    j["seed"] = seed;
    j["op_size"] = op_size;
    j["op_count"] = op_count;
    j["kaplansky_count"] = kaplansky_count;
    j["intertwiner_count"] = intertwiner_count;
    j["shift_inputs"] = shift_inputs;
    j["diag_inputs"] = diag_inputs;
    j["families"] = families;
    j["cap"] = cap;
    return j;
  }
};

}  // namespace stabilab
