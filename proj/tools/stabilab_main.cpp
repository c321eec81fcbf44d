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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "stabilab/suite.hpp"

namespace {

using namespace stabilab;

/// Pairwise similarity battery for two matrices loaded from JSON files.
Certificate matrix_pair_certificate(const std::string& path_a, const std::string& path_b,
                                    unsigned specht_length) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open matrix file: " + path);
    nlohmann::json j;
    in >> j;
    return ExactMatrix::from_json(j);
  };
  ExactMatrix a = load(path_a);
  ExactMatrix b = load(path_b);
  Certificate cert("op_matrix_pair");
  cert.add_param("a", path_a);
  cert.add_param("b", path_b);
  cert.add_param("invariant_factors_a", invariant_factors(a).str());
  cert.add_param("invariant_factors_b", invariant_factors(b).str());
  bool similar = similar_decide(a, b);
  cert.add_param("similar", similar ? "yes" : "no");
  if (similar) {
    ExactMatrix r = similarity_witness(a, b);
    cert.add_check("witness verified (B R == R A)", Rat(b * r == r * a ? 1 : 0), "==", Rat(1));
  }
  SpechtResult specht = specht_equiv(a, b, specht_length);
  cert.add_param("trace_test", specht.equivalent ? "agrees" : "differs at " + specht.word);
  cert.add_check("decision computed", Rat(1), "==", Rat(1));
  return cert;
}

/// Flat key=value config file mirroring the long flags. '#' starts a
/// comment, list-valued keys take ';'-separated entries, unknown keys are
/// rejected. Values apply only where the same flag was not given on the
/// command line.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("config line " + std::to_string(lineno) + " is not key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw parse_error("config line " + std::to_string(lineno) + " has an empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ';')) out.push_back(token);
  if (out.empty()) out.push_back("");
  return out;
}

/// Applies a config map onto the parsed options; command-line flags win.
void apply_config(const std::map<std::string, std::string>& kv, CLI::App* cmd, SuiteConfig& cfg,
                  std::vector<std::string>& forbidden_flags) {
  auto flag_given = [&](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  auto flag_exists = [&](const std::string& name) {
    return cmd->get_option_no_throw(name) != nullptr;
  };
  for (const auto& [key, value] : kv) {
    const std::string flag = "--" + key;
    if (!flag_exists(flag)) throw parse_error("unknown config key: " + key);
    if (flag_given(flag)) continue;
    try {
      if (key == "N") cfg.N = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "n") cfg.jn_n = static_cast<unsigned>(std::stoul(value));
      else if (key == "emit") cfg.emit_dir = value;
      else if (key == "report") cfg.report_path = value;
      else if (key == "cap") cfg.cap = std::stoull(value);
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "timings") cfg.include_timings = value == "1" || value == "true";
      else if (key == "forbidden") forbidden_flags = split_list(value);
      else if (key == "depth") cfg.depth_K = std::stoi(value);
      else if (key == "base-depth") cfg.base_depth_M = std::stoi(value);
      else if (key == "sweep-depth") cfg.depth_D = std::stoi(value);
      else if (key == "weight-depth") cfg.weight_K_max = std::stoi(value);
      else if (key == "size") cfg.op_size = std::stoi(value);
      else if (key == "count") cfg.op_count = std::stoi(value);
      else if (key == "kaplansky-count") cfg.kaplansky_count = std::stoi(value);
      else if (key == "intertwiner-count") cfg.intertwiner_count = std::stoi(value);
      else if (key == "weights") cfg.shift_inputs = split_list(value);
      else if (key == "angles") cfg.diag_inputs = split_list(value);
      else throw parse_error("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw parse_error("bad value for config key " + key + ": " + value);
    } catch (const std::out_of_range&) {
      throw parse_error("bad value for config key " + key + ": " + value);
    }
  }
}

int print_and_emit(Report& report, const SuiteConfig& cfg) {
  for (std::size_t k = 0; k < report.certificates.size(); ++k) {
    const Certificate& cert = report.certificates[k];
    const std::string& label = report.timings[k].first;
    const char* status = cert.skipped() ? "SKIP" : (cert.pass() ? "PASS" : "FAIL");
    std::cout << status << "  " << label;
    if (cert.skipped()) std::cout << "  (" << cert.note() << ")";
    std::cout << "\n";
  }
  if (cfg.include_timings) {
    for (const auto& [name, seconds] : report.timings)
      std::cerr << "time  " << name << "  " << seconds << "s\n";
  }
  try {
    emit_report(report, cfg);
  } catch (const emit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cout << (report.all_pass() ? "all certificates pass" : "certificate failures present")
            << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for block-root stability of operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.allow_config_extras(CLI::config_extras_mode::error);

  SuiteConfig cfg;
  std::vector<std::string> forbidden_flags;
  std::string matrix_a, matrix_b, config_path;
  unsigned specht_length = 8;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--N", cfg.N, "digit base (at least 3)");
    cmd->add_option("--seed", cfg.seed, "seed echoed into the report");
    cmd->add_option("--n", cfg.jn_n, "block-root order for shift/diag decisions");
    cmd->add_option("--emit", cfg.emit_dir, "directory for CSV companions");
    cmd->add_option("--report", cfg.report_path, "path for the JSON report");
    cmd->add_option("--cap", cfg.cap, "enumeration/breakpoint resource cap");
    cmd->add_option("--workers", cfg.workers,
                    "worker threads (default: STABILAB_WORKERS, then hardware)");
    cmd->add_flag("--timings", cfg.include_timings,
                  "print wall-clock timings and include them in the report");
    cmd->add_option("--config", config_path,
                    "flat key=value config file mirroring the flags; flags take precedence");
  };
  auto add_measure_opts = [&](CLI::App* cmd) {
    cmd->add_option("--forbidden", forbidden_flags,
                    "forbidden set as comma-separated indices; repeatable; empty string is the "
                    "empty set");
    cmd->add_option("--depth", cfg.depth_K, "cylinder depth K for the W1 chain");
    cmd->add_option("--base-depth", cfg.base_depth_M, "inner approximant depth M");
    cmd->add_option("--sweep-depth", cfg.depth_D, "translation/continuity sweep depth D");
    cmd->add_option("--weight-depth", cfg.weight_K_max, "normalization/decay sweep depth");
  };

  CLI::App* measure = app.add_subcommand("measure", "measure-family certificates");
  add_common(measure);
  add_measure_opts(measure);

  CLI::App* op = app.add_subcommand("op", "operator-family certificates");
  add_common(op);
  op->add_option("--size", cfg.op_size, "dimension of random operator inputs");
  op->add_option("--count", cfg.op_count, "batch size for seeded operator tests");
  op->add_option("--kaplansky-count", cfg.kaplansky_count, "halving battery size");
  op->add_option("--intertwiner-count", cfg.intertwiner_count, "recovery battery size");
  op->add_option("--matrix-a", matrix_a, "JSON matrix file for a pairwise similarity run");
  op->add_option("--matrix-b", matrix_b, "JSON matrix file for a pairwise similarity run");
  op->add_option("--specht-length", specht_length, "trace-test word length for the pair run");

  CLI::App* shift = app.add_subcommand("shift", "weighted-shift decisions");
  add_common(shift);
  shift->add_option("--weights", cfg.shift_inputs,
                    "weight sequence, e.g. \"bilateral;0:2,5:3\"; repeatable");

  CLI::App* diag = app.add_subcommand("diag", "diagonal-unitary decisions");
  add_common(diag);
  diag->add_option("--angles", cfg.diag_inputs,
                   "angle set, e.g. \"class:0/1@2,single:1/3\"; repeatable");

  CLI::App* bell = app.add_subcommand("bell", "ring-counterexample certificates");
  add_common(bell);
  CLI::App* bell_verify =
      bell->add_subcommand("verify", "print the three certificates as JSON");

  CLI::App* suite = app.add_subcommand("suite", "all certificate families");
  add_common(suite);
  add_measure_opts(suite);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      CLI::App* active = app.get_subcommands().front();
      apply_config(read_config_file(config_path), active, cfg, forbidden_flags);
    }
    if (!forbidden_flags.empty()) cfg.forbidden_sets = forbidden_flags;
    if (measure->parsed()) cfg.families = {"measure"};
    if (op->parsed()) cfg.families = {"op"};
    if (shift->parsed()) cfg.families = {"shift"};
    if (diag->parsed()) cfg.families = {"diag"};
    if (bell->parsed()) cfg.families = {"bell"};

    if (bell_verify->parsed()) {
      auto certs = nlohmann::ordered_json::array();
      certs.push_back(verify_phi_homomorphism().to_json());
      certs.push_back(verify_conjugation_identity().to_json());
      certs.push_back(verify_determinant_unit().to_json());
      std::cout << certs.dump(2) << "\n";
      bool ok = verify_phi_homomorphism().pass() && verify_conjugation_identity().pass() &&
                verify_determinant_unit().pass();
      return ok ? 0 : 1;
    }
    cfg.validate();
    Report report = run_suite(cfg);
    if (op->parsed() && (!matrix_a.empty() || !matrix_b.empty())) {
      if (matrix_a.empty() || matrix_b.empty())
        throw parse_error("pairwise run needs both --matrix-a and --matrix-b");
      report.certificates.push_back(matrix_pair_certificate(matrix_a, matrix_b, specht_length));
      report.timings.emplace_back("op matrix_pair", 0.0);
    }
    return print_and_emit(report, cfg);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
