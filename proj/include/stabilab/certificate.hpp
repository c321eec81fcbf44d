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

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stabilab/rational.hpp"

namespace stabilab {

inline nlohmann::ordered_json rat_json(const Rat& q) {
  return nlohmann::ordered_json{{"num", q.get_num().get_str()},
                                {"den", q.get_den().get_str()}};
}

/// One exact comparison inside a certificate. `asserted` records whether the
/// comparison gates the certificate's pass flag; informational records (for
/// example a bound reported but not relied upon) carry asserted = false.
struct CheckRecord {
  std::string label;
  Rat lhs;
  std::string rel;  // one of "==", "!=", "<", "<=", ">", ">="
  Rat rhs;
  bool ok = false;
  bool asserted = true;
};

inline bool relation_holds(const Rat& lhs, const std::string& rel, const Rat& rhs) {
  if (rel == "==") return lhs == rhs;
  if (rel == "!=") return lhs != rhs;
  if (rel == "<") return lhs < rhs;
  if (rel == "<=") return lhs <= rhs;
  if (rel == ">") return lhs > rhs;
  if (rel == ">=") return lhs >= rhs;
  throw invalid_parameter("unknown relation: " + rel);
}

/// Evidence at finite resolution: a named bundle of exact comparisons plus
/// the parameters (depths, caps, seeds) they were computed at. The pass flag
/// is always recomputable from the stored quantities.
class Certificate {
 public:
  explicit Certificate(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  bool pass() const { return pass_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }
  const std::string& note() const { return note_; }

  void set_note(std::string note) { note_ = std::move(note); }
  void add_param(const std::string& key, const std::string& value) {
    params_.emplace_back(key, value);
  }
  void add_param(const std::string& key, long value) {
    params_.emplace_back(key, std::to_string(value));
  }

  void add_check(std::string label, Rat lhs, std::string rel, Rat rhs, bool asserted = true) {
    CheckRecord rec{std::move(label), std::move(lhs), std::move(rel), std::move(rhs), false,
                    asserted};
    rec.ok = relation_holds(rec.lhs, rec.rel, rec.rhs);
    if (asserted && !rec.ok) pass_ = false;
    checks_.push_back(std::move(rec));
  }

  /// Folds another certificate's comparison records into this one, labels
  /// prefixed; pass flags combine.
  void absorb(const Certificate& other, const std::string& prefix) {
    for (CheckRecord rec : other.checks()) {
      rec.label = prefix + rec.label;
      if (rec.asserted && !rec.ok) pass_ = false;
      checks_.push_back(std::move(rec));
    }
  }

  /// Marks the certificate as skipped with a reason; a skipped certificate
  /// does not pass but is distinguishable from a failed one.
  void mark_skipped(const std::string& reason) {
    skipped_ = true;
    pass_ = false;
    note_ = reason;
  }
  bool skipped() const { return skipped_; }

  /// Re-derives the pass flag from the stored comparisons alone.
  bool recompute_pass() const {
    if (skipped_) return false;
    for (const auto& rec : checks_) {
      if (rec.asserted && !relation_holds(rec.lhs, rec.rel, rec.rhs)) return false;
    }
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params_) params[k] = v;
    j["params"] = params;
    j["pass"] = pass_;
    if (skipped_) j["skipped"] = true;
    if (!note_.empty()) j["note"] = note_;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& rec : checks_) {
      nlohmann::ordered_json c;
      c["label"] = rec.label;
      c["lhs"] = rat_json(rec.lhs);
      c["rel"] = rec.rel;
      c["rhs"] = rat_json(rec.rhs);
      c["ok"] = rec.ok;
      c["asserted"] = rec.asserted;
      checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    return j;
  }

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<CheckRecord> checks_;
  std::string note_;
  bool pass_ = true;
  bool skipped_ = false;
};

}  // namespace stabilab
