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
// Finite-dimensional exact operator laboratory: the block root construction
// and its algebraic identities, symmetry witnesses, spectral-splitting and
// commutant structure checks, intertwiner recovery and the trace test.
//
// Index arguments carry no content at finite rank: every operator on a
// finite-dimensional space is Fredholm of index zero, so no operation here
// tracks indices.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "stabilab/certificate.hpp"
#include "stabilab/invariant_factors.hpp"
#include "stabilab/random.hpp"

namespace stabilab {

/// The primitive block root: identity blocks on the superdiagonal and A in
/// the bottom-left corner. Its n-th power is the n-fold direct sum of A.
inline ExactMatrix build_jn(const ExactMatrix& a, unsigned n) {
  if (!a.is_square()) throw invalid_parameter("block root needs a square matrix");
  if (n < 2) throw invalid_parameter("block root needs n >= 2");
  const std::size_t d = a.rows();
  ExactMatrix m(n * d, n * d);
  for (unsigned k = 0; k + 1 < n; ++k) m.set_block(k * d, (k + 1) * d, ExactMatrix::identity(d));
  m.set_block((n - 1) * d, 0, a);
  return m;
}

struct RootIdentity {
  bool power_is_direct_sum;      // J_n(A)^n equals diag(A, ..., A)
  bool charpoly_is_composition;  // det(xI - J_n(A)) equals charpoly_A(x^n)
};

/// The two exact algebraic identities satisfied by the block root.
inline RootIdentity root_identity_check(const ExactMatrix& a, unsigned n) {
  ExactMatrix jn = build_jn(a, n);
  ExactMatrix power = jn.pow(n);
  ExactMatrix expect = a;
  for (unsigned k = 1; k < n; ++k) expect = ExactMatrix::direct_sum(expect, a);
  bool first = power == expect;
  bool second = charpoly(jn) == charpoly(a).compose_power(n);
  return {first, second};
}

// ---------------------------------------------------------------------------
// Symmetry witnesses
// ---------------------------------------------------------------------------

namespace detail {

using CMatrix = std::vector<std::vector<std::complex<double>>>;

inline CMatrix to_complex(const ExactMatrix& m) {
  CMatrix out(m.rows(), std::vector<std::complex<double>>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).to_complex();
  return out;
}

inline CMatrix cmul(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.size(), std::vector<std::complex<double>>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j)
      worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

}  // namespace detail

/// Exact rotation witness V with V* J_n(A) V = theta J_n(A), available when
/// theta = e^{2 pi i / n} is itself Gaussian rational, i.e. n in {1, 2, 4}.
struct RotationWitness {
  ExactMatrix v;
  GaussianRational theta;
  bool verified;
};

inline RotationWitness rotation_witness_exact(const ExactMatrix& a, unsigned n) {
  GaussianRational theta;
  switch (n) {
    case 1: theta = GaussianRational(1); break;
    case 2: theta = GaussianRational(-1); break;
    case 4: theta = GaussianRational::i(); break;
    default:
      throw unsupported_configuration(
          "exact rotation witnesses exist for n in {1, 2, 4}; use the float check otherwise");
  }
  const std::size_t d = a.rows();
  ExactMatrix jn = n == 1 ? a : build_jn(a, n);
  ExactMatrix v(jn.rows(), jn.cols());
  GaussianRational phase(1);
  for (unsigned k = 0; k < std::max(n, 1u); ++k) {
    for (std::size_t t = 0; t < d; ++t) v.at(k * d + t, k * d + t) = phase;
    phase *= theta;
  }
  ExactMatrix conj = v.adjoint() * jn * v;
  return {v, theta, conj == jn * theta};
}

/// Float-mode rotation residual for general n, against tolerance 1e-12.
inline double rotation_residual_float(const ExactMatrix& a, unsigned n) {
  if (n < 2) throw invalid_parameter("rotation residual needs n >= 2");
  const std::size_t d = a.rows();
  detail::CMatrix jn = detail::to_complex(build_jn(a, n));
  const double tau = 6.283185307179586476925286766559;
  std::complex<double> theta = std::polar(1.0, tau / n);
  std::size_t size = n * d;
  detail::CMatrix v(size, std::vector<std::complex<double>>(size));
  detail::CMatrix vstar(size, std::vector<std::complex<double>>(size));
  for (unsigned k = 0; k < n; ++k) {
    std::complex<double> phase = std::pow(theta, double(k));
    for (std::size_t t = 0; t < d; ++t) {
      v[k * d + t][k * d + t] = phase;
      vstar[k * d + t][k * d + t] = std::conj(phase);
    }
  }
  detail::CMatrix lhs = detail::cmul(detail::cmul(vstar, jn), v);
  detail::CMatrix rhs = jn;
  for (auto& row : rhs)
    for (auto& z : row) z *= theta;
  return detail::max_abs_diff(lhs, rhs);
}

/// Exact permutation P with P^T J_n(A + B) P = J_n(A) + J_n(B) (direct sums).
struct DirectSumWitness {
  ExactMatrix p;
  bool verified;
};

inline DirectSumWitness direct_sum_witness(const ExactMatrix& a, const ExactMatrix& b,
                                           unsigned n) {
  const std::size_t da = a.rows(), db = b.rows();
  ExactMatrix lhs = build_jn(ExactMatrix::direct_sum(a, b), n);
  ExactMatrix rhs = ExactMatrix::direct_sum(build_jn(a, n), build_jn(b, n));
  const std::size_t size = n * (da + db);
  // Source coordinates: slot k holds the A-part then the B-part; target: all
  // A-slots first, then all B-slots. P maps target coordinates to source.
  ExactMatrix p(size, size);
  for (unsigned k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < da; ++t) p.at(k * (da + db) + t, k * da + t) = GaussianRational(1);
    for (std::size_t t = 0; t < db; ++t)
      p.at(k * (da + db) + da + t, n * da + k * db + t) = GaussianRational(1);
  }
  bool ok = p.transpose() * lhs * p == rhs;
  return {p, ok};
}

/// Exact scaling witness for the square root: a diagonal D with
/// D^{-1} J_2(kappa A) D = s J_2(A) where s^2 = kappa, available when kappa
/// has a Gaussian-rational square root.
struct ScalingWitness {
  ExactMatrix d;
  GaussianRational scale;
  bool verified;
};

inline ScalingWitness scaling_witness_exact(const ExactMatrix& a, const GaussianRational& kappa) {
  auto s = gaussian_sqrt(kappa);
  if (!s)
    throw unsupported_configuration(
        "kappa has no Gaussian-rational square root; use the float check");
  if (s->is_zero()) throw invalid_parameter("scaling witness needs kappa != 0");
  const std::size_t d = a.rows();
  ExactMatrix dm(2 * d, 2 * d);
  for (std::size_t t = 0; t < d; ++t) {
    dm.at(t, t) = GaussianRational(1);
    dm.at(d + t, d + t) = *s;
  }
  ExactMatrix lhs = dm.inverse() * build_jn(a * kappa, 2) * dm;
  ExactMatrix rhs = build_jn(a, 2) * (*s);
  return {dm, *s, lhs == rhs};
}

inline double scaling_residual_float(const ExactMatrix& a, std::complex<double> kappa) {
  if (kappa == std::complex<double>(0, 0))
    throw invalid_parameter("scaling residual needs kappa != 0");
  std::complex<double> s = std::sqrt(kappa);
  const std::size_t d = a.rows();
  detail::CMatrix j2a = detail::to_complex(build_jn(a, 2));
  detail::CMatrix lhs = j2a;
  // J_2(kappa A) differs from J_2(A) only in the bottom-left block.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) lhs[d + i][j] *= kappa;
  // D^{-1} (.) D with D = diag(I, sI).
  for (std::size_t i = 0; i < 2 * d; ++i)
    for (std::size_t j = 0; j < 2 * d; ++j) {
      if (i >= d) lhs[i][j] /= s;
      if (j >= d) lhs[i][j] *= s;
    }
  detail::CMatrix rhs = j2a;
  for (auto& row : rhs)
    for (auto& z : row) z *= s;
  return detail::max_abs_diff(lhs, rhs);
}

struct SymmetryWitnesses {
  Certificate certificate{"symmetry_witnesses"};
  std::optional<ExactMatrix> rotation_v;
  ExactMatrix permutation;
  std::optional<ExactMatrix> scaling_d;
};

/// Produces and verifies the three symmetry witnesses: the rotation
/// conjugation, the direct-sum rearrangement and the scaling similarity.
/// Exact where the scalars are Gaussian rational, float-checked at 1e-12
/// otherwise (and rejected when float mode is disabled).
inline SymmetryWitnesses symmetry_witnesses(const ExactMatrix& a, unsigned n,
                                            const GaussianRational& kappa,
                                            const ExactMatrix& b, bool float_mode = true) {
  SymmetryWitnesses out;
  Certificate& cert = out.certificate;
  cert.add_param("n", static_cast<long>(n));
  cert.add_param("kappa", kappa.str());
  const Rat tol = Rat(1, Int("1000000000000"));
  if (n == 1 || n == 2 || n == 4) {
    RotationWitness rw = rotation_witness_exact(a, n);
    out.rotation_v = rw.v;
    cert.add_check("rotation conjugation exact", Rat(rw.verified ? 0 : 1), "==", Rat(0));
  } else if (float_mode) {
    double res = rotation_residual_float(a, n);
    cert.add_check("rotation conjugation residual", Rat(res), "<=", tol);
  } else {
    throw unsupported_configuration("rotation witness for this n needs float mode");
  }
  DirectSumWitness dsw = direct_sum_witness(a, b, std::max(2u, n));
  out.permutation = dsw.p;
  cert.add_check("direct-sum permutation exact", Rat(dsw.verified ? 0 : 1), "==", Rat(0));
  if (gaussian_sqrt(kappa) && !kappa.is_zero()) {
    ScalingWitness sw = scaling_witness_exact(a, kappa);
    out.scaling_d = sw.d;
    cert.add_check("scaling similarity exact", Rat(sw.verified ? 0 : 1), "==", Rat(0));
  } else if (float_mode) {
    double res = scaling_residual_float(a, kappa.to_complex());
    cert.add_check("scaling similarity residual", Rat(res), "<=", tol);
  } else {
    throw unsupported_configuration("scaling witness for this kappa needs float mode");
  }
  return out;
}

/// Single-operator form: the direct-sum witness pairs A with itself.
inline SymmetryWitnesses symmetry_witnesses(const ExactMatrix& a, unsigned n,
                                            const GaussianRational& kappa,
                                            bool float_mode = true) {
  return symmetry_witnesses(a, n, kappa, a, float_mode);
}

// ---------------------------------------------------------------------------
// Spectral splitting and commutant structure
// ---------------------------------------------------------------------------

/// Checks the splitting forced by disjoint spectra: an invertible intertwiner
/// between two block-diagonal operators with crosswise-disjoint spectra has
/// exactly zero off-diagonal blocks and invertible diagonal blocks. Spectral
/// disjointness is certified exactly through resultants, and the uniqueness
/// of the zero solution to the associated linear equation is verified by a
/// trivial kernel.
inline Certificate rosenblum_split_check(const ExactMatrix& a1, const ExactMatrix& a2,
                                         const ExactMatrix& b1, const ExactMatrix& b2,
                                         const ExactMatrix& t) {
  const std::size_t d1 = a1.rows(), d2 = a2.rows();
  if (b1.rows() != d1 || b2.rows() != d2) throw invalid_parameter("block size mismatch");
  if (t.rows() != d1 + d2 || t.cols() != d1 + d2)
    throw invalid_parameter("intertwiner size mismatch");
  GaussianRational r1 = resultant(charpoly(a2), charpoly(b1));
  GaussianRational r2 = resultant(charpoly(a1), charpoly(b2));
  if (r1.is_zero() || r2.is_zero())
    throw invalid_parameter("spectra are not disjoint; the splitting hypothesis fails");

  Certificate cert("rosenblum_split");
  cert.add_check("resultant(A2, B1) nonzero", r1.norm2(), ">", Rat(0));
  cert.add_check("resultant(A1, B2) nonzero", r2.norm2(), ">", Rat(0));

  ExactMatrix lhs = t * ExactMatrix::direct_sum(a1, a2);
  ExactMatrix rhs = ExactMatrix::direct_sum(b1, b2) * t;
  cert.add_check("T intertwines the direct sums", Rat(lhs == rhs ? 0 : 1), "==", Rat(0));
  cert.add_check("T invertible", Rat(t.rank()), "==", Rat(static_cast<long>(d1 + d2)));
  cert.add_check("upper-right block zero",
                 Rat(t.block(0, d1, d1, d2).is_zero() ? 0 : 1), "==", Rat(0));
  cert.add_check("lower-left block zero",
                 Rat(t.block(d1, 0, d2, d1).is_zero() ? 0 : 1), "==", Rat(0));
  cert.add_check("first diagonal block invertible", Rat(t.block(0, 0, d1, d1).rank()), "==",
                 Rat(static_cast<long>(d1)));
  cert.add_check("second diagonal block invertible", Rat(t.block(d1, d1, d2, d2).rank()), "==",
                 Rat(static_cast<long>(d2)));
  // X A2 = B1 X linearizes to (A2^T kron I - I kron B1) vec X = 0.
  ExactMatrix sylvester = ExactMatrix::kron(a2.transpose(), ExactMatrix::identity(d1)) -
                          ExactMatrix::kron(ExactMatrix::identity(d2), b1);
  cert.add_check("Sylvester kernel dimension", Rat(sylvester.nullspace().cols()), "==", Rat(0));
  return cert;
}

/// Basis of the commutant of m, via the kernel of Z -> Zm - mZ.
inline std::vector<ExactMatrix> commutant_basis(const ExactMatrix& m) {
  if (!m.is_square()) throw invalid_parameter("commutant of a non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix system = ExactMatrix::kron(m.transpose(), ExactMatrix::identity(n)) -
                       ExactMatrix::kron(ExactMatrix::identity(n), m);
  ExactMatrix basis = system.nullspace();
  std::vector<ExactMatrix> out;
  out.reserve(basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k)
    out.push_back(ExactMatrix::unvec(basis.block(0, k, basis.rows(), 1), n, n));
  return out;
}

/// Verifies the block structure of a member of the commutant of J_2(A): the
/// diagonal blocks agree, the bottom-left block is the top-right block times
/// A, and both commute with A. The same structure is then confirmed for an
/// entire computed basis of the commutant.
inline Certificate commutant_structure_check(const ExactMatrix& a, const ExactMatrix& z) {
  const std::size_t d = a.rows();
  ExactMatrix j2 = build_jn(a, 2);
  if (z.rows() != 2 * d || z.cols() != 2 * d) throw invalid_parameter("commutant member size");
  if (!(z * j2 == j2 * z)) throw invalid_parameter("matrix does not commute with the block root");

  Certificate cert("commutant_structure");
  auto add_block_checks = [&](const ExactMatrix& w, const std::string& tag) {
    ExactMatrix w1 = w.block(0, 0, d, d), w2 = w.block(0, d, d, d);
    ExactMatrix w3 = w.block(d, 0, d, d), w4 = w.block(d, d, d, d);
    cert.add_check(tag + ": bottom-left equals top-right times A",
                   Rat(w3 == w2 * a ? 0 : 1), "==", Rat(0));
    cert.add_check(tag + ": diagonal blocks equal", Rat(w4 == w1 ? 0 : 1), "==", Rat(0));
    cert.add_check(tag + ": top-left commutes with A", Rat(w1 * a == a * w1 ? 0 : 1), "==",
                   Rat(0));
    cert.add_check(tag + ": top-right commutes with A", Rat(w2 * a == a * w2 ? 0 : 1), "==",
                   Rat(0));
  };
  add_block_checks(z, "input");
  std::vector<ExactMatrix> basis = commutant_basis(j2);
  cert.add_param("commutant dimension", static_cast<long>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    add_block_checks(basis[k], "basis element " + std::to_string(k));
  return cert;
}

// ---------------------------------------------------------------------------
// Intertwiner analysis and recovery
// ---------------------------------------------------------------------------

struct IntertwinerAnalysis {
  Certificate certificate{"j2_intertwiner"};
  bool recovered = false;
  std::optional<ExactMatrix> witness;  // invertible W1 with W1 A = B W1
  int trials_used = 0;
};

/// Verifies the block identities of an invertible intertwiner between two
/// block roots, then attempts to recover a direct similarity witness by
/// sampling the commutant: W1 = S2 A Z2 + S1 Z1 for random exact-rational
/// combinations Z of the commutant basis. Failure to find an invertible W1
/// within the trial budget is inconclusive, not a refutation.
inline IntertwinerAnalysis j2_intertwiner_analysis(const ExactMatrix& a, const ExactMatrix& b,
                                                   const ExactMatrix& s, std::uint64_t seed = 1,
                                                   int trials = 32) {
  const std::size_t d = a.rows();
  if (b.rows() != d) throw invalid_parameter("operator size mismatch");
  if (s.rows() != 2 * d || s.cols() != 2 * d) throw invalid_parameter("intertwiner size mismatch");
  ExactMatrix j2a = build_jn(a, 2), j2b = build_jn(b, 2);
  if (!(s * j2a == j2b * s)) throw invalid_parameter("S does not intertwine the block roots");
  if (!s.is_invertible()) throw invalid_parameter("S must be invertible");

  IntertwinerAnalysis out;
  Certificate& cert = out.certificate;
  cert.add_param("seed", static_cast<long>(seed));
  cert.add_param("trials", static_cast<long>(trials));
  ExactMatrix s1 = s.block(0, 0, d, d), s2 = s.block(0, d, d, d);
  ExactMatrix s3 = s.block(d, 0, d, d), s4 = s.block(d, d, d, d);
  cert.add_check("S1 == S4", Rat(s1 == s4 ? 0 : 1), "==", Rat(0));
  cert.add_check("S3 == S2 A", Rat(s3 == s2 * a ? 0 : 1), "==", Rat(0));
  cert.add_check("S3 == B S2", Rat(s3 == b * s2 ? 0 : 1), "==", Rat(0));
  cert.add_check("S1 A == B S1", Rat(s1 * a == b * s1 ? 0 : 1), "==", Rat(0));

  std::vector<ExactMatrix> basis = commutant_basis(j2a);
  SeededRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    out.trials_used = trial + 1;
    ExactMatrix z = ExactMatrix::zero(2 * d, 2 * d);
    for (const ExactMatrix& e : basis) {
      long c = rng.range(-2, 2);
      if (c != 0) z = z + e * GaussianRational(c);
    }
    ExactMatrix z1 = z.block(0, 0, d, d), z2 = z.block(0, d, d, d);
    ExactMatrix w1 = s2 * a * z2 + s1 * z1;
    if (!w1.is_invertible()) continue;
    if (!(w1 * a == b * w1))
      throw std::logic_error("recovered W1 fails to intertwine; commutant basis is wrong");
    out.recovered = true;
    out.witness = w1;
    break;
  }
  cert.add_check("recovery found an invertible W1", Rat(out.recovered ? 0 : 1), "==", Rat(0),
                 /*asserted=*/false);
  if (!out.recovered)
    cert.set_note("recovery inconclusive within the trial budget; not a refutation");
  return out;
}

// ---------------------------------------------------------------------------
// Trace test
// ---------------------------------------------------------------------------

struct SpechtResult {
  bool equivalent;
  std::string word;  // first distinguishing word over letters x (matrix) and y (adjoint)
  GaussianRational trace_a;
  GaussianRational trace_b;
};

/// Compares tr w(A, A*) against tr w(B, B*) for every word of length at most
/// L, in level order. Agreement is necessary for unitary equivalence and
/// sufficient once L reaches the classical dimension-dependent bound 2 d^2;
/// agreement below that bound is heuristic.
inline SpechtResult specht_equiv(const ExactMatrix& a, const ExactMatrix& b, unsigned L,
                                 std::uint64_t word_cap = std::uint64_t(1) << 18) {
  if (a.rows() != b.rows() || !a.is_square() || !b.is_square())
    throw invalid_parameter("trace test needs square matrices of equal size");
  if (L >= 62 || (std::uint64_t(2) << L) > word_cap)
    throw enumeration_too_large("word budget exceeded for the trace test");
  ExactMatrix letters_a[2] = {a, a.adjoint()};
  ExactMatrix letters_b[2] = {b, b.adjoint()};
  struct Node {
    std::string word;
    ExactMatrix prod_a;
    ExactMatrix prod_b;
  };
  std::vector<Node> level{{std::string(), ExactMatrix::identity(a.rows()),
                           ExactMatrix::identity(a.rows())}};
  const char names[2] = {'x', 'y'};
  for (unsigned len = 1; len <= L; ++len) {
    std::vector<Node> next;
    next.reserve(level.size() * 2);
    for (const Node& node : level) {
      for (int letter = 0; letter < 2; ++letter) {
        Node child{node.word + names[letter], node.prod_a * letters_a[letter],
                   node.prod_b * letters_b[letter]};
        GaussianRational ta = child.prod_a.trace();
        GaussianRational tb = child.prod_b.trace();
        if (ta != tb) return {false, child.word, ta, tb};
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return {true, std::string(), GaussianRational(0), GaussianRational(0)};
}

/// Default word-length bound: the classical sufficiency bound 2 d^2. Guarded
/// by the word budget, which this exceeds already for 3x3 inputs.
inline SpechtResult specht_equiv(const ExactMatrix& a, const ExactMatrix& b) {
  return specht_equiv(a, b, 2 * static_cast<unsigned>(a.rows() * a.rows()));
}

}  // namespace stabilab
