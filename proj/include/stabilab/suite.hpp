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

//
// Batch driver: the per-family certificate batteries and the worker pool
// that runs them. Certificates are pure, so the pool only affects wall-clock
// time; report order is fixed by construction order, never completion order.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>

#include "stabilab/bellring.hpp"
#include "stabilab/oplab.hpp"
#include "stabilab/report.hpp"
#include "stabilab/shiftlab.hpp"

namespace stabilab {

// ---------------------------------------------------------------------------
// Operator batteries
// ---------------------------------------------------------------------------

/// Seeded batch of the block-root algebraic identities: the n-th power is the
/// direct sum and the characteristic polynomial composes through x^n.
inline Certificate charpoly_identity_certificate(std::uint64_t seed, int count, int size,
                                                 const std::vector<unsigned>& orders = {2, 3}) {
  Certificate cert("op_charpoly_identity");
  cert.add_param("seed", static_cast<long>(seed));
  cert.add_param("count", count);
  cert.add_param("size", size);
  SeededRng rng(seed);
  long power_failures = 0, charpoly_failures = 0;
  for (int k = 0; k < count; ++k) {
    ExactMatrix a = random_gaussian_matrix(rng, static_cast<std::size_t>(size));
    for (unsigned n : orders) {
      RootIdentity id = root_identity_check(a, n);
      if (!id.power_is_direct_sum) ++power_failures;
      if (!id.charpoly_is_composition) ++charpoly_failures;
    }
  }
  cert.add_check("n-th power equals the direct sum (failures)", Rat(power_failures), "==",
                 Rat(0));
  cert.add_check("characteristic polynomial composes through x^n (failures)",
                 Rat(charpoly_failures), "==", Rat(0));
  return cert;
}

/// Seeded halving battery: doubling preserves and reflects similarity, and
/// halving the invariant factors of a doubled matrix recovers the original's.
inline Certificate kaplansky_certificate(std::uint64_t seed, int count, int max_size = 6) {
  Certificate cert("op_kaplansky");
  cert.add_param("seed", static_cast<long>(seed));
  cert.add_param("count", count);
  cert.add_param("max_size", max_size);
  SeededRng rng(seed);
  long equivalence_failures = 0, halving_failures = 0;
  long similar_pairs = 0, witnesses_verified = 0;
  for (int k = 0; k < count; ++k) {
    std::size_t size = static_cast<std::size_t>(rng.range(2, max_size));
    ExactMatrix a = random_jordan_type(rng, size);
    ExactMatrix b;
    if (rng.range(0, 1) == 0) {
      ExactMatrix r = random_unimodular(rng, size);
      b = r * a * r.inverse();
    } else {
      b = random_jordan_type(rng, size);
    }
    bool single = similar_decide(a, b);
    bool doubled = similar_decide(ExactMatrix::direct_sum(a, a), ExactMatrix::direct_sum(b, b));
    if (single != doubled) ++equivalence_failures;
    if (kaplansky_halve(ExactMatrix::direct_sum(a, a)) != invariant_factors(a))
      ++halving_failures;
    if (single) {
      ++similar_pairs;
      ExactMatrix r = similarity_witness(a, b);  // verified internally
      if (b * r == r * a && r.is_invertible()) ++witnesses_verified;
    }
  }
  cert.add_check("doubling equivalence disagreements", Rat(equivalence_failures), "==", Rat(0));
  cert.add_check("halving disagreements", Rat(halving_failures), "==", Rat(0));
  cert.add_check("similarity witnesses verified", Rat(witnesses_verified), "==",
                 Rat(similar_pairs));
  return cert;
}

/// Seeded intertwiner constructions: S = (W + W) Z with Z in the commutant.
/// Block identities must hold on every construction; recovery of a direct
/// witness must succeed on at least the required fraction.
inline Certificate intertwiner_recovery_certificate(std::uint64_t seed, int count,
                                                    const Rat& required_fraction = Rat(9, 10)) {
  Certificate cert("op_intertwiner_recovery");
  cert.add_param("seed", static_cast<long>(seed));
  cert.add_param("count", count);
  SeededRng rng(seed);
  long identity_failures = 0, recoveries = 0, built = 0;
  for (int k = 0; k < count; ++k) {
    std::size_t d = static_cast<std::size_t>(rng.range(2, 3));
    ExactMatrix a = random_jordan_type(rng, d);
    ExactMatrix w = random_unimodular(rng, d);
    ExactMatrix b = w * a * w.inverse();
    std::vector<ExactMatrix> basis = commutant_basis(build_jn(a, 2));
    std::optional<ExactMatrix> z;
    for (int attempt = 0; attempt < 16 && !z; ++attempt) {
      ExactMatrix cand = ExactMatrix::zero(2 * d, 2 * d);
      for (const ExactMatrix& e : basis) {
        long c = rng.range(-2, 2);
        if (c != 0) cand = cand + e * GaussianRational(c);
      }
      if (cand.is_invertible()) z = cand;
    }
    if (!z) continue;  // no invertible commutant sample; skip this construction
    ++built;
    ExactMatrix s = ExactMatrix::direct_sum(w, w) * (*z);
    IntertwinerAnalysis analysis = j2_intertwiner_analysis(a, b, s, rng.raw(), 32);
    if (!analysis.certificate.recompute_pass()) {
      // The asserted records are the block identities.
      ++identity_failures;
    }
    if (analysis.recovered) ++recoveries;
  }
  cert.add_param("built", built);
  cert.add_check("block identity failures", Rat(identity_failures), "==", Rat(0));
  cert.add_check("recovery fraction", Rat(recoveries), ">=", required_fraction * Rat(built));
  return cert;
}

/// Trace-test battery: the canonical nilpotent pair is separated at word
/// length two, and unitary conjugates agree through word length eight.
inline Certificate specht_certificate(std::uint64_t seed, int count) {
  Certificate cert("op_specht");
  cert.add_param("seed", static_cast<long>(seed));
  cert.add_param("count", count);
  ExactMatrix n1(2, 2), n2(2, 2);
  n1.at(0, 1) = GaussianRational(1);
  n2.at(0, 1) = GaussianRational(2);
  SpechtResult separated = specht_equiv(n1, n2, 2);
  cert.add_param("distinguishing_word", separated.word);
  cert.add_check("nilpotent pair separated", Rat(separated.equivalent ? 1 : 0), "==", Rat(0));
  cert.add_check("separating trace (first)", separated.trace_a.re, "==", Rat(1));
  cert.add_check("separating trace (second)", separated.trace_b.re, "==", Rat(4));

  SeededRng rng(seed);
  long conjugate_failures = 0, self_failures = 0;
  for (int k = 0; k < count; ++k) {
    ExactMatrix a = random_gaussian_matrix(rng, 2);
    ExactMatrix u = random_exact_unitary(rng, 2);
    ExactMatrix b = u.adjoint() * a * u;
    if (!specht_equiv(a, b, 8).equivalent) ++conjugate_failures;
    if (!specht_equiv(a, a, 8).equivalent) ++self_failures;
  }
  cert.add_check("unitary conjugates reported inequivalent", Rat(conjugate_failures), "==",
                 Rat(0));
  cert.add_check("self comparisons reported inequivalent", Rat(self_failures), "==", Rat(0));
  return cert;
}

/// A spectral-splitting example with certified disjoint spectra.
inline Certificate rosenblum_example_certificate(std::uint64_t seed) {
  SeededRng rng(seed);
  ExactMatrix a1 = ExactMatrix::direct_sum(jordan_block(GaussianRational(1), 1),
                                           jordan_block(GaussianRational(2), 1));
  ExactMatrix a2 = ExactMatrix::direct_sum(jordan_block(GaussianRational(3), 1),
                                           jordan_block(GaussianRational::i(), 1));
  ExactMatrix t1 = random_unimodular(rng, 2);
  ExactMatrix t4 = random_unimodular(rng, 2);
  ExactMatrix b1 = t1 * a1 * t1.inverse();
  ExactMatrix b2 = t4 * a2 * t4.inverse();
  ExactMatrix t(4, 4);
  t.set_block(0, 0, t1);
  t.set_block(2, 2, t4);
  Certificate cert = rosenblum_split_check(a1, a2, b1, b2, t);
  cert.add_param("seed", static_cast<long>(seed));
  return cert;
}

/// Commutant structure at the canonical nilpotent example, for the identity
/// and for the block root itself.
inline Certificate commutant_example_certificate() {
  Certificate cert("op_commutant");
  ExactMatrix a(2, 2);
  a.at(0, 1) = GaussianRational(1);
  ExactMatrix j2 = build_jn(a, 2);
  cert.absorb(commutant_structure_check(a, ExactMatrix::identity(4)), "identity input: ");
  cert.absorb(commutant_structure_check(a, j2), "block-root input: ");
  cert.add_check("commutant dimension", Rat(static_cast<long>(commutant_basis(j2).size())), "==",
                 Rat(4));
  return cert;
}

/// Rotation, direct-sum and scaling witnesses on seeded inputs, exact where
/// the scalars are Gaussian rational and float-checked otherwise.
inline Certificate symmetry_certificate(std::uint64_t seed) {
  Certificate cert("op_symmetry");
  cert.add_param("seed", static_cast<long>(seed));
  SeededRng rng(seed);
  ExactMatrix a = random_gaussian_matrix(rng, 2);
  ExactMatrix b = random_gaussian_matrix(rng, 2);
  cert.absorb(symmetry_witnesses(a, 2, GaussianRational(4), b).certificate, "n=2, kappa=4: ");
  cert.absorb(symmetry_witnesses(a, 4, GaussianRational(Rat(9, 4)), b).certificate,
              "n=4, kappa=9/4: ");
  cert.absorb(symmetry_witnesses(a, 3, GaussianRational::i(), b).certificate,
              "n=3, kappa=i (float): ");
  return cert;
}

// ---------------------------------------------------------------------------
// Shift and diagonal batteries
// ---------------------------------------------------------------------------

/// The canonical shift decisions with their expected outcomes, the gap
/// scaling identity, and the window-spectrum refutation for the unstable
/// case.
inline Certificate shift_canonical_certificate(unsigned n) {
  Certificate cert("shift_canonical");
  cert.add_param("n", static_cast<long>(n));
  WeightSeq ones(WeightSeq::Kind::bilateral, {});
  WeightSeq one_exc(WeightSeq::Kind::bilateral, {{0, Rat(2)}});
  WeightSeq two_exc(WeightSeq::Kind::bilateral, {{0, Rat(2)}, {5, Rat(3)}});

  cert.add_check("all-ones bilateral stable", Rat(bilateral_stability_decide(ones, n).stable),
                 "==", Rat(1));
  cert.add_check("single exceptional weight stable",
                 Rat(bilateral_stability_decide(one_exc, n).stable), "==", Rat(1));
  ShiftDecision refuted = bilateral_stability_decide(two_exc, n);
  cert.add_check("two exceptional weights unstable", Rat(refuted.stable), "==", Rat(0));
  cert.add_check("gap scales by n", Rat(refuted.interleaved_gap), "==",
                 Rat(static_cast<long>(n) * refuted.gap));
  // The separated window lives in the original window spectrum but not in
  // the interleaved one.
  int k = static_cast<int>(refuted.gap) + 1;
  auto spec_w = k_spectrum(two_exc, k);
  auto spec_jn = k_spectrum(shift_jn_weights(two_exc, n), k);
  cert.add_check("separated window present originally",
                 Rat(spec_w.count(*refuted.separated_window) ? 1 : 0), "==", Rat(1));
  cert.add_check("separated window absent after interleaving",
                 Rat(spec_jn.count(*refuted.separated_window) ? 1 : 0), "==", Rat(0));

  WeightSeq u_ones(WeightSeq::Kind::unilateral, {});
  WeightSeq u_w0(WeightSeq::Kind::unilateral, {{0, Rat(2)}});
  WeightSeq u_w3(WeightSeq::Kind::unilateral, {{3, Rat(1, 2)}});
  cert.add_check("all-ones unilateral stable",
                 Rat(unilateral_stability_decide(u_ones, n).stable), "==", Rat(1));
  cert.add_check("w0=2 unilateral unstable", Rat(unilateral_stability_decide(u_w0, n).stable),
                 "==", Rat(0));
  cert.add_check("w3=1/2 unilateral unstable", Rat(unilateral_stability_decide(u_w3, n).stable),
                 "==", Rat(0));
  return cert;
}

/// Seeded battery: the one-exceptional-weight predicate agrees with the
/// window-spectrum comparison on random eventually-1 bilateral sequences,
/// and the exceptional gap always scales by n.
inline Certificate shift_battery_certificate(std::uint64_t seed, int count, unsigned n) {
  Certificate cert("shift_battery");
  cert.add_param("seed", static_cast<long>(seed));
  cert.add_param("count", count);
  cert.add_param("n", static_cast<long>(n));
  SeededRng rng(seed);
  long disagreements = 0, gap_failures = 0;
  for (int k = 0; k < count; ++k) {
    std::map<long, Rat> exc;
    int entries = static_cast<int>(rng.range(0, 3));
    for (int e = 0; e < entries; ++e) {
      Rat w(rng.range(1, 4), rng.range(1, 2));
      w.canonicalize();
      exc[rng.range(-6, 6)] = w;
    }
    WeightSeq seq(WeightSeq::Kind::bilateral, exc);
    bool predicate = bilateral_stability_decide(seq, n).stable;
    // Window-spectrum route: compare the spectra of the sequence and its
    // interleaving for window lengths up to one past the exceptional gap.
    WeightSeq jn = shift_jn_weights(seq, n);
    int k_hi = seq.omega_size() >= 2 ? static_cast<int>(seq.min_gap()) + 1 : 4;
    bool windows_agree = true;
    for (int win = 1; win <= k_hi; ++win)
      windows_agree = windows_agree && k_spectrum(seq, win) == k_spectrum(jn, win);
    if (predicate != windows_agree) ++disagreements;
    if (seq.omega_size() >= 2 && jn.min_gap() != static_cast<long>(n) * seq.min_gap())
      ++gap_failures;
  }
  cert.add_check("predicate vs window-spectrum disagreements", Rat(disagreements), "==", Rat(0));
  cert.add_check("gap scaling failures", Rat(gap_failures), "==", Rat(0));
  return cert;
}

/// Decision report for one textual weight sequence; informational.
inline Certificate shift_report_certificate(const std::string& input, unsigned n) {
  Certificate cert("shift_decision");
  cert.add_param("input", input);
  cert.add_param("n", static_cast<long>(n));
  WeightSeq seq = parse_weight_seq(input);
  if (seq.kind() == WeightSeq::Kind::bilateral) {
    ShiftDecision d = bilateral_stability_decide(seq, n);
    cert.add_param("decision", d.stable ? "stable" : "not stable");
    cert.add_param("reason", d.reason);
    cert.add_check("exceptional weight count", Rat(static_cast<long>(d.omega_size)), ">=",
                   Rat(0));
    if (!d.stable) {
      cert.add_check("gap contradiction: n*gap > gap", Rat(d.interleaved_gap), ">", Rat(d.gap));
    }
  } else {
    UnilateralDecision d = unilateral_stability_decide(seq, n);
    cert.add_param("decision", d.stable ? "stable" : "not stable");
    cert.add_param("reason", d.reason);
    if (d.witness_position)
      cert.add_param("first differing position", static_cast<long>(*d.witness_position));
    cert.add_check("decision computed", Rat(1), "==", Rat(1));
  }
  return cert;
}

/// The canonical diagonal-unitary decisions with their expected outcomes.
inline Certificate diag_canonical_certificate(unsigned n) {
  Certificate cert("diag_canonical");
  cert.add_param("n", static_cast<long>(n));
  AngleSet full_class = parse_angle_set("class:0/1@" + std::to_string(n));
  DiagDecision stable = diag_stability_decide(full_class, n);
  cert.add_check("full orbit class stable", Rat(stable.stable ? 1 : 0), "==", Rat(1));

  AngleSet identity_only = parse_angle_set("single:0/1");
  DiagDecision unstable = diag_stability_decide(identity_only, n);
  cert.add_check("identity spectrum unstable", Rat(unstable.stable ? 1 : 0), "==", Rat(0));
  cert.add_check("missing-root witness", unstable.witness.value_or(Rat(-1)), "==",
                 Rat(1, static_cast<long>(n)));

  AngleSet shifted = parse_angle_set("single:1/3,class:0/1@" + std::to_string(n) + "+1/3");
  DiagDecision shifted_decision = diag_stability_decide(shifted, n);
  cert.add_check("shifted class unstable", Rat(shifted_decision.stable ? 1 : 0), "==", Rat(0));
  cert.add_check("shifted-class witness", shifted_decision.witness.value_or(Rat(-1)), "==",
                 Rat(1, 3 * static_cast<long>(n)));

  AngleSet finite = parse_angle_set("class:0/1@" + std::to_string(n) + "!finite");
  cert.add_check("finite multiplicity unstable",
                 Rat(diag_stability_decide(finite, n).stable ? 1 : 0), "==", Rat(0));
  return cert;
}

/// Decision report for one textual angle set; informational.
inline Certificate diag_report_certificate(const std::string& input, unsigned n, int depth) {
  Certificate cert("diag_decision");
  cert.add_param("input", input);
  cert.add_param("n", static_cast<long>(n));
  AngleSet set = parse_angle_set(input);
  DiagDecision d = diag_stability_decide(set, n, depth);
  cert.add_param("decision", d.stable ? "stable" : "not stable");
  cert.add_param("reason", d.reason);
  if (d.witness) cert.add_param("witness", d.witness->get_str());
  if (d.stable) {
    std::string reps;
    for (const Rat& r : d.class_representatives) {
      if (!reps.empty()) reps += ",";
      reps += r.get_str();
    }
    cert.add_param("class_representatives", reps);
  }
  cert.add_check("decision computed", Rat(1), "==", Rat(1));
  return cert;
}

// ---------------------------------------------------------------------------
// Suite assembly
// ---------------------------------------------------------------------------

namespace detail {

struct SuiteTask {
  std::string label;
  std::function<Certificate()> run;
};

inline int worker_count(const SuiteConfig& cfg, std::size_t task_count) {
  int workers = cfg.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("STABILAB_WORKERS")) workers = std::atoi(env);
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  return std::min<int>(workers, static_cast<int>(std::max<std::size_t>(task_count, 1)));
}

}  // namespace detail

/// Runs the selected certificate families. Tasks execute in a worker pool;
/// per-task failures (resource caps, undecidable probes) become skipped
/// certificates with the reason recorded, never a crash. Report order is the
/// construction order.
inline Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  std::vector<detail::SuiteTask> tasks;
  auto family_selected = [&](const char* name) {
    for (const auto& f : cfg.families)
      if (f == name) return true;
    return false;
  };

  if (family_selected("measure")) {
    for (const std::string& fstr : cfg.forbidden_sets) {
      ForbiddenSet B = parse_forbidden(fstr, cfg.N);
      std::string tag = "measure[B=" + (fstr.empty() ? std::string("empty") : fstr) + "] ";
      tasks.push_back({tag + "weight_normalization", [=] {
                         return weight_normalization_certificate(B, cfg.N, cfg.weight_K_max);
                       }});
      tasks.push_back({tag + "weight_decay", [=] {
                         return weight_decay_certificate(B, cfg.N, cfg.weight_K_max);
                       }});
      tasks.push_back({tag + "w1_cauchy", [=] {
                         return w1_cauchy_certificate(B, cfg.N, cfg.depth_K, cfg.base_depth_M,
                                                      cfg.cap);
                       }});
      tasks.push_back(
          {tag + "translation", [=] { return translation_certificate(B, cfg.N, cfg.depth_D); }});
      tasks.push_back(
          {tag + "continuity", [=] { return continuity_certificate(B, cfg.N, cfg.depth_D); }});
      tasks.push_back({tag + "circle_stability", [=] {
                         return circle_stability_certificate(B, cfg.N, cfg.N, cfg.depth_D);
                       }});
    }
    for (const std::string& fstr : cfg.forbidden_sets) {
      ForbiddenSet B = parse_forbidden(fstr, cfg.N);
      if (B.empty()) continue;
      ForbiddenSet empty = ForbiddenSet::empty_set(cfg.N);
      Word b = b_word(B.indices().front(), cfg.N);
      tasks.push_back({"measure[B=" + fstr + "] singularity_vs_empty", [=] {
                         return singularity_certificate(B, empty, b, 3, 2, cfg.N);
                       }});
      break;  // one separating pair in the default battery
    }
  }
  if (family_selected("op")) {
    tasks.push_back({"op charpoly_identity", [=] {
                       return charpoly_identity_certificate(cfg.seed, cfg.op_count, cfg.op_size);
                     }});
    tasks.push_back({"op kaplansky", [=] {
                       return kaplansky_certificate(cfg.seed + 1, cfg.kaplansky_count);
                     }});
    tasks.push_back({"op intertwiner_recovery", [=] {
                       return intertwiner_recovery_certificate(cfg.seed + 2,
                                                               cfg.intertwiner_count);
                     }});
    tasks.push_back({"op specht", [=] { return specht_certificate(cfg.seed + 3, cfg.op_count); }});
    tasks.push_back({"op rosenblum", [=] { return rosenblum_example_certificate(cfg.seed + 4); }});
    tasks.push_back({"op commutant", [] { return commutant_example_certificate(); }});
    tasks.push_back({"op symmetry", [=] { return symmetry_certificate(cfg.seed + 5); }});
  }
  if (family_selected("shift")) {
    tasks.push_back({"shift canonical", [=] { return shift_canonical_certificate(cfg.jn_n); }});
    tasks.push_back({"shift battery", [=] {
                       return shift_battery_certificate(cfg.seed + 6, 20, cfg.jn_n);
                     }});
    for (const std::string& input : cfg.shift_inputs)
      tasks.push_back(
          {"shift decision " + input, [=] { return shift_report_certificate(input, cfg.jn_n); }});
  }
  if (family_selected("diag")) {
    tasks.push_back({"diag canonical", [=] { return diag_canonical_certificate(cfg.jn_n); }});
    for (const std::string& input : cfg.diag_inputs)
      tasks.push_back({"diag decision " + input, [=] {
                         return diag_report_certificate(input, cfg.jn_n, 6);
                       }});
  }
  if (family_selected("bell")) {
    tasks.push_back({"bell phi_homomorphism", [] { return verify_phi_homomorphism(); }});
    tasks.push_back({"bell conjugation_identity", [] { return verify_conjugation_identity(); }});
    tasks.push_back({"bell determinant_unit", [] { return verify_determinant_unit(); }});
  }

  std::vector<std::optional<Certificate>> results(tasks.size());
  std::vector<double> seconds(tasks.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      auto start = std::chrono::steady_clock::now();
      try {
        results[index] = tasks[index].run();
      } catch (const std::exception& e) {
        Certificate skipped(tasks[index].label);
        skipped.mark_skipped(e.what());
        results[index] = std::move(skipped);
      }
      seconds[index] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  int workers = detail::worker_count(cfg, tasks.size());
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Report report;
  report.config = cfg;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    report.certificates.push_back(std::move(*results[k]));
    report.timings.emplace_back(tasks[k].label, seconds[k]);
  }
  return report;
}

}  // namespace stabilab
