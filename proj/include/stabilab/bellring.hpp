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
// Exact verification of the unital-ring counterexample: a 2x2 matrix over a
// commutative quadric ring conjugates x + x to y + y although x and y are
// not conjugate, witnessed through an explicit homomorphism into rational
// 2x2 matrices. The free-product arithmetic keeps the commutative generators
// a, b, c and the free letters x, y in separate, order-preserving segments.

#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "stabilab/certificate.hpp"
#include "stabilab/exact_matrix.hpp"

namespace stabilab {

// ---------------------------------------------------------------------------
// Commutative polynomials in a, b, c with the quadric reduction a^2 -> bc + 1
// ---------------------------------------------------------------------------

class Poly3 {
 public:
  using Expo = std::array<unsigned, 3>;  // exponents of a, b, c

  Poly3() = default;
  static Poly3 constant(const Rat& v) {
    Poly3 p;
    if (v != 0) p.terms_[{0, 0, 0}] = v;
    return p;
  }
  static Poly3 var(char name) {
    Poly3 p;
    Expo e{0, 0, 0};
    switch (name) {
      case 'a': e[0] = 1; break;
      case 'b': e[1] = 1; break;
      case 'c': e[2] = 1; break;
      default: throw invalid_parameter("unknown commutative variable");
    }
    p.terms_[e] = Rat(1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Expo{0, 0, 0} &&
           terms_.begin()->second == 1;
  }
  const std::map<Expo, Rat>& terms() const { return terms_; }

  Poly3 operator-() const {
    Poly3 p = *this;
    for (auto& [e, v] : p.terms_) v = -v;
    return p;
  }
  Poly3 operator+(const Poly3& o) const {
    Poly3 p = *this;
    for (const auto& [e, v] : o.terms_) p.add_term(e, v);
    return p;
  }
  Poly3 operator-(const Poly3& o) const { return *this + (-o); }
  Poly3 operator*(const Poly3& o) const {
    Poly3 p;
    for (const auto& [e1, v1] : terms_)
      for (const auto& [e2, v2] : o.terms_)
        p.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, Rat(v1 * v2));
    return p;
  }
  bool operator==(const Poly3& o) const { return terms_ == o.terms_; }

  /// Normal form modulo the relation a^2 = bc + 1: every monomial ends with
  /// a-exponent at most 1.
  Poly3 reduced() const {
    Poly3 cur = *this;
    for (;;) {
      bool changed = false;
      Poly3 next;
      for (const auto& [e, v] : cur.terms_) {
        if (e[0] >= 2) {
          changed = true;
          next.add_term({e[0] - 2, e[1] + 1, e[2] + 1}, v);
          next.add_term({e[0] - 2, e[1], e[2]}, v);
        } else {
          next.add_term(e, v);
        }
      }
      cur = std::move(next);
      if (!changed) return cur;
    }
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, v] : terms_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << v.get_str() << ")";
      const char* names = "abc";
      for (int k = 0; k < 3; ++k)
        for (unsigned t = 0; t < e[k]; ++t) out << names[k];
    }
    return out.str();
  }

 private:
  void add_term(const Expo& e, const Rat& v) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (v != 0) terms_[e] = v;
      return;
    }
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<Expo, Rat> terms_;
};

// ---------------------------------------------------------------------------
// The free product of the commutative ring and the free algebra on x, y
// ---------------------------------------------------------------------------

/// One factor of a free-product monomial: either a nontrivial commutative
/// monomial in a, b, c or a free letter. Adjacent commutative factors are
/// always merged, so the segment list alternates.
struct Segment {
  enum class Type { comm, letter_x, letter_y };
  Type type = Type::comm;
  std::array<unsigned, 3> expo{0, 0, 0};

  bool operator==(const Segment& o) const { return type == o.type && expo == o.expo; }
  bool operator<(const Segment& o) const {
    if (type != o.type) return type < o.type;
    return expo < o.expo;
  }
};

using FreeMono = std::vector<Segment>;

/// A rational linear combination of free-product monomials in canonical form:
/// like terms merged, the zero element has no terms.
class FreeExpr {
 public:
  FreeExpr() = default;
  static FreeExpr scalar(const Rat& v) {
    FreeExpr e;
    if (v != 0) e.terms_[FreeMono{}] = v;
    return e;
  }
  static FreeExpr generator(char name) {
    FreeExpr e;
    Segment seg;
    switch (name) {
      case 'a': seg.expo = {1, 0, 0}; break;
      case 'b': seg.expo = {0, 1, 0}; break;
      case 'c': seg.expo = {0, 0, 1}; break;
      case 'x': seg.type = Segment::Type::letter_x; break;
      case 'y': seg.type = Segment::Type::letter_y; break;
      default: throw invalid_parameter("unknown generator");
    }
    e.terms_[FreeMono{seg}] = Rat(1);
    return e;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<FreeMono, Rat>& terms() const { return terms_; }

  FreeExpr operator-() const {
    FreeExpr e = *this;
    for (auto& [m, v] : e.terms_) v = -v;
    return e;
  }
  FreeExpr operator+(const FreeExpr& o) const {
    FreeExpr e = *this;
    for (const auto& [m, v] : o.terms_) e.add_term(m, v);
    return e;
  }
  FreeExpr operator-(const FreeExpr& o) const { return *this + (-o); }
  FreeExpr operator*(const FreeExpr& o) const {
    FreeExpr e;
    for (const auto& [m1, v1] : terms_)
      for (const auto& [m2, v2] : o.terms_) e.add_term(concat(m1, m2), Rat(v1 * v2));
    return e;
  }
  bool operator==(const FreeExpr& o) const { return terms_ == o.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, v] : terms_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << v.get_str() << ")";
      for (const Segment& s : m) {
        if (s.type == Segment::Type::letter_x) {
          out << "x";
        } else if (s.type == Segment::Type::letter_y) {
          out << "y";
        } else {
          const char* names = "abc";
          for (int k = 0; k < 3; ++k)
            for (unsigned t = 0; t < s.expo[k]; ++t) out << names[k];
        }
      }
    }
    return out.str();
  }

  /// Concatenation with the boundary merge that keeps monomials canonical.
  static FreeMono concat(const FreeMono& a, const FreeMono& b) {
    FreeMono out = a;
    for (const Segment& s : b) {
      if (!out.empty() && s.type == Segment::Type::comm &&
          out.back().type == Segment::Type::comm) {
        for (int k = 0; k < 3; ++k) out.back().expo[k] += s.expo[k];
      } else {
        out.push_back(s);
      }
    }
    return out;
  }

 private:
  void add_term(const FreeMono& m, const Rat& v) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (v != 0) terms_[m] = v;
      return;
    }
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<FreeMono, Rat> terms_;
};

// ---------------------------------------------------------------------------
// The homomorphism into rational 2x2 matrices
// ---------------------------------------------------------------------------

inline ExactMatrix phi_letter(char name) {
  ExactMatrix m(2, 2);
  switch (name) {
    case 'a':
      m.at(0, 1) = GaussianRational(1);
      m.at(1, 0) = GaussianRational(1);
      return m;
    case 'b':
    case 'c':
      return m;  // zero
    case 'x':
      m.at(0, 0) = GaussianRational(1);
      m.at(1, 1) = GaussianRational(-1);
      return m;
    case 'y':
      m.at(0, 0) = GaussianRational(-1);
      m.at(1, 1) = GaussianRational(1);
      return m;
    case '1':
      return ExactMatrix::identity(2);
    default:
      throw invalid_parameter("unknown generator");
  }
}

/// Image of a canonical free-product monomial under the homomorphism.
inline ExactMatrix phi_of_monomial(const FreeMono& m) {
  ExactMatrix acc = ExactMatrix::identity(2);
  for (const Segment& s : m) {
    if (s.type == Segment::Type::letter_x) {
      acc = acc * phi_letter('x');
    } else if (s.type == Segment::Type::letter_y) {
      acc = acc * phi_letter('y');
    } else {
      const char* names = "abc";
      for (int k = 0; k < 3; ++k)
        for (unsigned t = 0; t < s.expo[k]; ++t) acc = acc * phi_letter(names[k]);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// The defining relations of the homomorphism, plus the separation of the
/// images of x and y.
inline Certificate verify_phi_homomorphism() {
  Certificate cert("bell_phi_homomorphism");
  ExactMatrix a = phi_letter('a'), b = phi_letter('b'), c = phi_letter('c');
  ExactMatrix x = phi_letter('x'), y = phi_letter('y'), one = phi_letter('1');
  auto zero_check = [&](const std::string& label, const ExactMatrix& m) {
    cert.add_check(label, Rat(m.is_zero() ? 0 : 1), "==", Rat(0));
  };
  zero_check("phi(a) phi(x) - phi(y) phi(a)", a * x - y * a);
  zero_check("phi(b) phi(x) - phi(y) phi(b)", b * x - y * b);
  zero_check("phi(c) phi(x) - phi(y) phi(c)", c * x - y * c);
  zero_check("phi(a)^2 - phi(b) phi(c) - phi(1)", a * a - b * c - one);
  cert.add_check("phi(x) != phi(y)", Rat((x - y).is_zero() ? 0 : 1), "==", Rat(1));
  return cert;
}

/// The conjugation identity, entry by entry: conjugating x + x by the matrix
/// [[a, b], [c, a]] produces y + y modulo the ideal, because every entry of
/// the difference is syntactically one of the three ideal generators.
inline Certificate verify_conjugation_identity() {
  Certificate cert("bell_conjugation_identity");
  const FreeExpr a = FreeExpr::generator('a'), b = FreeExpr::generator('b');
  const FreeExpr c = FreeExpr::generator('c'), x = FreeExpr::generator('x');
  const FreeExpr y = FreeExpr::generator('y');
  const FreeExpr gens[3] = {a * x - y * a, b * x - y * b, c * x - y * c};

  // M (x + x) - (y + y) M for M = [[a, b], [c, a]].
  FreeExpr m[2][2] = {{a, b}, {c, a}};
  FreeExpr diff[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) diff[i][j] = m[i][j] * x - y * m[i][j];

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      long matched = -1;
      for (int g = 0; g < 3; ++g) {
        if (diff[i][j] == gens[g] || diff[i][j] == -gens[g]) {
          matched = g + 1;
          break;
        }
      }
      cert.add_check("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") matches an ideal generator",
                     Rat(matched), ">=", Rat(1));
    }
  return cert;
}

/// The determinant relation: det [[a, b], [c, a]] reduces to 1 modulo the
/// quadric, the explicit inverse multiplies back to the identity, and the
/// relation polynomial itself reduces to zero.
inline Certificate verify_determinant_unit() {
  Certificate cert("bell_determinant_unit");
  const Poly3 a = Poly3::var('a'), b = Poly3::var('b'), c = Poly3::var('c');
  const Poly3 one = Poly3::constant(Rat(1));

  Poly3 det = a * a - b * c;
  cert.add_check("det reduces to 1", Rat(det.reduced() == one ? 0 : 1), "==", Rat(0));

  // M * [[a, -b], [-c, a]] = (a^2 - bc) I.
  Poly3 m[2][2] = {{a, b}, {c, a}};
  Poly3 inv[2][2] = {{a, -b}, {-c, a}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Poly3 entry;
      for (int k = 0; k < 2; ++k) entry = entry + m[i][k] * inv[k][j];
      Poly3 expect = i == j ? one : Poly3();
      cert.add_check("product entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") reduces to the identity entry",
                     Rat(entry.reduced() == expect ? 0 : 1), "==", Rat(0));
    }

  Poly3 relation = a * a - b * c - one;
  cert.add_check("relation reduces to 0", Rat(relation.reduced().is_zero() ? 0 : 1), "==",
                 Rat(0));
  return cert;
}

}  // namespace stabilab
