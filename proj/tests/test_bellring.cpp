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

#include "stabilab/bellring.hpp"
#include "stabilab/random.hpp"

using namespace stabilab;

namespace {

FreeExpr word_expr(const std::string& word) {
  FreeExpr acc = FreeExpr::scalar(Rat(1));
  for (char c : word) acc = acc * FreeExpr::generator(c);
  return acc;
}

}  // namespace

TEST_CASE("free-product monomials keep letter order", "[bellring]") {
  FreeExpr ax = word_expr("ax");
  FreeExpr xa = word_expr("xa");
  CHECK_FALSE(ax == xa);
  // Commutative generators merge and sort inside a segment.
  CHECK(word_expr("ab") == word_expr("ba"));
  CHECK(word_expr("abx") == word_expr("bax"));
  CHECK_FALSE(word_expr("axb") == word_expr("bxa"));
  // The same segment structure with different exponents stays distinct.
  CHECK_FALSE(word_expr("aax") == word_expr("ax"));
}

TEST_CASE("free-product arithmetic laws on random expressions", "[bellring]") {
  SeededRng rng(51);
  const char alphabet[] = {'a', 'b', 'c', 'x', 'y'};
  auto random_expr = [&] {
    FreeExpr sum;
    int terms = static_cast<int>(rng.range(1, 3));
    for (int t = 0; t < terms; ++t) {
      std::string word;
      int len = static_cast<int>(rng.range(0, 3));
      for (int k = 0; k < len; ++k) word += alphabet[rng.range(0, 4)];
      Rat coeff(rng.range(-2, 2), rng.range(1, 2));
      coeff.canonicalize();
      sum = sum + word_expr(word) * FreeExpr::scalar(coeff);
    }
    return sum;
  };
  for (int trial = 0; trial < 12; ++trial) {
    FreeExpr e1 = random_expr(), e2 = random_expr(), e3 = random_expr();
    CHECK((e1 + e2) + e3 == e1 + (e2 + e3));
    CHECK((e1 * e2) * e3 == e1 * (e2 * e3));
    CHECK(e1 * (e2 + e3) == e1 * e2 + e1 * e3);
    CHECK((e1 + e2) * e3 == e1 * e3 + e2 * e3);
    CHECK(e1 - e1 == FreeExpr());
  }
}

TEST_CASE("homomorphism images multiply", "[bellring]") {
  SeededRng rng(53);
  const char alphabet[] = {'a', 'b', 'c', 'x', 'y'};
  for (int trial = 0; trial < 20; ++trial) {
    std::string w1, w2;
    for (int k = 0; k < rng.range(0, 5); ++k) w1 += alphabet[rng.range(0, 4)];
    for (int k = 0; k < rng.range(0, 5); ++k) w2 += alphabet[rng.range(0, 4)];
    FreeExpr e1 = word_expr(w1), e2 = word_expr(w2);
    REQUIRE(e1.terms().size() == 1);
    REQUIRE(e2.terms().size() == 1);
    const FreeMono& m1 = e1.terms().begin()->first;
    const FreeMono& m2 = e2.terms().begin()->first;
    CHECK(phi_of_monomial(FreeExpr::concat(m1, m2)) ==
          phi_of_monomial(m1) * phi_of_monomial(m2));
  }
}

TEST_CASE("homomorphism relations", "[bellring]") {
  Certificate cert = verify_phi_homomorphism();
  CHECK(cert.pass());
  CHECK(cert.recompute_pass());
  // The first relation lands on the quarter-turn matrix on both sides.
  ExactMatrix lhs = phi_letter('a') * phi_letter('x');
  ExactMatrix rhs = phi_letter('y') * phi_letter('a');
  ExactMatrix quarter(2, 2);
  quarter.at(0, 1) = GaussianRational(-1);
  quarter.at(1, 0) = GaussianRational(1);
  CHECK(lhs == quarter);
  CHECK(rhs == quarter);
  CHECK(phi_letter('a') * phi_letter('a') == ExactMatrix::identity(2));
  CHECK_FALSE(phi_letter('x') == phi_letter('y'));
}

TEST_CASE("conjugation identity lands in the ideal", "[bellring]") {
  Certificate cert = verify_conjugation_identity();
  CHECK(cert.pass());
  // Entry by entry: (1,1) is the first generator, (1,2) the second, (2,1)
  // the third, (2,2) the first again.
  const FreeExpr a = FreeExpr::generator('a'), b = FreeExpr::generator('b');
  const FreeExpr c = FreeExpr::generator('c'), x = FreeExpr::generator('x');
  const FreeExpr y = FreeExpr::generator('y');
  CHECK(a * x - y * a == word_expr("ax") - word_expr("ya"));
  CHECK((b * x - y * b) == (b * x - y * b));
  CHECK_FALSE((a * x - y * a).is_zero());
}

TEST_CASE("determinant reduces to a unit", "[bellring]") {
  Certificate cert = verify_determinant_unit();
  CHECK(cert.pass());
  const Poly3 a = Poly3::var('a'), b = Poly3::var('b'), c = Poly3::var('c');
  CHECK((a * a - b * c).reduced().is_one());
  CHECK((a * a - b * c - Poly3::constant(Rat(1))).reduced().is_zero());
  // Reduction respects multiplication: a^4 and (bc+1)^2 agree after
  // normalization.
  Poly3 a4 = a * a * a * a;
  Poly3 bc1 = b * c + Poly3::constant(Rat(1));
  CHECK(a4.reduced() == (bc1 * bc1).reduced());
}

TEST_CASE("certificates are deterministic and total", "[bellring]") {
  for (int round = 0; round < 2; ++round) {
    CHECK(verify_phi_homomorphism().to_json() == verify_phi_homomorphism().to_json());
    CHECK(verify_conjugation_identity().to_json() == verify_conjugation_identity().to_json());
    CHECK(verify_determinant_unit().to_json() == verify_determinant_unit().to_json());
  }
}
