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

#include "stabilab/invariant_factors.hpp"
#include "stabilab/random.hpp"

using namespace stabilab;

namespace {

GPoly poly(std::initializer_list<long> ascending) {
  std::vector<GaussianRational> c;
  for (long v : ascending) c.emplace_back(v);
  return GPoly(std::move(c));
}

}  // namespace

TEST_CASE("Gaussian-rational field arithmetic", "[linalg]") {
  GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  GaussianRational z(Rat(1, 2), Rat(1, 3));
  CHECK(z + z.conj() == GaussianRational(Rat(1)));
  CHECK(z * z.conj() == GaussianRational(z.norm2()));
  CHECK(z / z == GaussianRational(1));
  CHECK_THROWS_AS(z / GaussianRational(0), invalid_parameter);
  CHECK(GaussianRational(Rat(1), Rat(1)) / GaussianRational(Rat(0), Rat(1)) ==
        GaussianRational(Rat(1), Rat(-1)));
}

TEST_CASE("rational and Gaussian square roots", "[linalg]") {
  CHECK(rat_sqrt(Rat(4, 9)) == Rat(2, 3));
  CHECK(rat_sqrt(Rat(0)) == Rat(0));
  CHECK_FALSE(rat_sqrt(Rat(2)).has_value());
  CHECK_FALSE(rat_sqrt(Rat(-1)).has_value());
  CHECK(gaussian_sqrt(GaussianRational(4)) == GaussianRational(2));
  CHECK(gaussian_sqrt(GaussianRational(-4)) == GaussianRational(Rat(0), Rat(2)));
  auto root2i = gaussian_sqrt(GaussianRational(Rat(0), Rat(2)));
  REQUIRE(root2i.has_value());
  CHECK((*root2i) * (*root2i) == GaussianRational(Rat(0), Rat(2)));
  CHECK_FALSE(gaussian_sqrt(GaussianRational::i()).has_value());
}

TEST_CASE("matrix arithmetic and inverses", "[linalg]") {
  SeededRng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix r = random_unimodular(rng, 4);
    CHECK(r * r.inverse() == ExactMatrix::identity(4));
    GaussianRational det = r.determinant();
    CHECK((det == GaussianRational(1) || det == GaussianRational(-1)));
  }
  ExactMatrix singular(2, 2);
  singular.at(0, 0) = GaussianRational(1);
  singular.at(1, 0) = GaussianRational(1);
  CHECK(singular.rank() == 1);
  CHECK_FALSE(singular.is_invertible());
  CHECK_THROWS_AS(singular.inverse(), no_witness);
  CHECK(singular.nullspace().cols() == 1);
}

TEST_CASE("vec and Kronecker linearization", "[linalg]") {
  SeededRng rng(11);
  ExactMatrix a = random_gaussian_matrix(rng, 2);
  ExactMatrix x = random_gaussian_matrix(rng, 2);
  ExactMatrix b = random_gaussian_matrix(rng, 2);
  // vec(A X B) == (B^T kron A) vec(X)
  ExactMatrix lhs = (a * x * b).vec();
  ExactMatrix rhs = ExactMatrix::kron(b.transpose(), a) * x.vec();
  CHECK(lhs == rhs);
  CHECK(ExactMatrix::unvec(x.vec(), 2, 2) == x);
}

TEST_CASE("matrix JSON round trip", "[linalg]") {
  SeededRng rng(13);
  ExactMatrix m = random_gaussian_matrix(rng, 3);
  CHECK(ExactMatrix::from_json(m.to_json()) == m);
}

TEST_CASE("polynomial division, gcd and composition", "[linalg]") {
  GPoly num = poly({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  GPoly den = poly({-1, 1});          // x - 1
  auto [q, r] = GPoly::divmod(num, den);
  CHECK(r.is_zero());
  CHECK(q == poly({6, -5, 1}));

  SeededRng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GaussianRational> nc, dc;
    for (int k = 0; k <= static_cast<int>(rng.range(0, 4)); ++k)
      nc.emplace_back(Rat(rng.range(-3, 3), rng.range(1, 2)));
    for (int k = 0; k <= static_cast<int>(rng.range(0, 3)); ++k)
      dc.emplace_back(Rat(rng.range(-3, 3), rng.range(1, 2)));
    GPoly n(nc), d(dc);
    if (d.is_zero()) continue;
    auto [qq, rr] = GPoly::divmod(n, d);
    CHECK(qq * d + rr == n);
    CHECK(rr.degree() < d.degree());
  }

  GPoly g = poly_gcd(poly({2, -3, 1}), poly({3, -4, 1}));  // (x-1)(x-2), (x-1)(x-3)
  CHECK(g == poly({-1, 1}));

  GPoly p = poly({1, 0, 2});  // 2x^2 + 1
  CHECK(p.compose_power(3) == GPoly({GaussianRational(1), GaussianRational(0),
                                     GaussianRational(0), GaussianRational(0),
                                     GaussianRational(0), GaussianRational(0),
                                     GaussianRational(2)}));
}

TEST_CASE("resultants certify disjoint spectra", "[linalg]") {
  CHECK(resultant(poly({-1, 1}), poly({-2, 1})) != GaussianRational(0));
  CHECK(resultant(poly({-1, 1}), poly({-1, 1})) == GaussianRational(0));
  SeededRng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    GPoly f = GPoly(1), g = GPoly(1);
    for (int k = 0; k < 3; ++k) f = f * GPoly::linear(GaussianRational(rng.range(-2, 2)));
    for (int k = 0; k < 2; ++k) g = g * GPoly::linear(GaussianRational(rng.range(-2, 2)));
    bool share_root = !poly_gcd(f, g).is_constant();
    CHECK((resultant(f, g) == GaussianRational(0)) == share_root);
  }
}

TEST_CASE("characteristic polynomial by trace recursion", "[linalg]") {
  ExactMatrix nil(2, 2);
  nil.at(0, 1) = GaussianRational(1);
  CHECK(charpoly(nil) == poly({0, 0, 1}));
  ExactMatrix one(1, 1);
  one.at(0, 0) = GaussianRational(5);
  CHECK(charpoly(one) == poly({-5, 1}));
  // Companion matrix of x^3 - 2x - 1 has exactly that characteristic
  // polynomial.
  ExactMatrix comp(3, 3);
  comp.at(1, 0) = GaussianRational(1);
  comp.at(2, 1) = GaussianRational(1);
  comp.at(0, 2) = GaussianRational(1);
  comp.at(1, 2) = GaussianRational(2);
  comp.at(2, 2) = GaussianRational(0);
  CHECK(charpoly(comp) == poly({-1, -2, 0, 1}));
}

TEST_CASE("invariant factors of canonical examples", "[linalg]") {
  ExactMatrix zero1(1, 1);
  CHECK(invariant_factors(zero1).factors == std::vector<GPoly>{poly({0, 1})});

  ExactMatrix nilpotent(3, 3);  // one 2-block and one 1-block
  nilpotent.at(0, 1) = GaussianRational(1);
  InvariantFactors f = invariant_factors(nilpotent);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == poly({0, 1}));
  CHECK(f.factors[1] == poly({0, 0, 1}));

  ExactMatrix ones = ExactMatrix::identity(2);
  InvariantFactors g = invariant_factors(ones);
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0] == poly({-1, 1}));
  CHECK(g.factors[1] == poly({-1, 1}));
}

TEST_CASE("invariant factors are similarity invariants", "[linalg]") {
  SeededRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix a = random_jordan_type(rng, 4, false);
    ExactMatrix r = random_unimodular(rng, 4);
    CHECK(invariant_factors(a) == invariant_factors(r * a * r.inverse()));
  }
}

TEST_CASE("similarity decision", "[linalg]") {
  ExactMatrix upper(2, 2), lower(2, 2);
  upper.at(0, 0) = upper.at(0, 1) = upper.at(1, 1) = GaussianRational(1);
  lower.at(0, 0) = lower.at(1, 0) = lower.at(1, 1) = GaussianRational(1);
  CHECK(similar_decide(upper, lower));

  ExactMatrix nil(2, 2);
  nil.at(0, 1) = GaussianRational(1);
  CHECK_FALSE(similar_decide(nil, ExactMatrix::zero(2, 2)));

  SeededRng rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    ExactMatrix a = random_gaussian_matrix(rng, 3);
    ExactMatrix r = random_unimodular(rng, 3);
    CHECK(similar_decide(a, r * a * r.inverse()));
  }
}

TEST_CASE("similarity witnesses verify by multiplication", "[linalg]") {
  ExactMatrix a = ExactMatrix::identity(3);
  a.at(0, 1) = GaussianRational(2);
  // The two cyclic bases coincide for identical inputs.
  CHECK(similarity_witness(a, a) == ExactMatrix::identity(3));

  ExactMatrix upper(2, 2), lower(2, 2);
  upper.at(0, 0) = upper.at(0, 1) = upper.at(1, 1) = GaussianRational(1);
  lower.at(0, 0) = lower.at(1, 0) = lower.at(1, 1) = GaussianRational(1);
  ExactMatrix r = similarity_witness(upper, lower);
  CHECK(lower * r == r * upper);
  CHECK(r.is_invertible());

  SeededRng rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    ExactMatrix m = random_jordan_type(rng, 6, false);
    ExactMatrix conj = random_unimodular(rng, 6);
    ExactMatrix b = conj * m * conj.inverse();
    ExactMatrix w = similarity_witness(m, b);
    CHECK(b * w == w * m);
    CHECK(w.is_invertible());
  }

  ExactMatrix nil(2, 2);
  nil.at(0, 1) = GaussianRational(1);
  CHECK_THROWS_AS(similarity_witness(nil, ExactMatrix::zero(2, 2)), no_witness);
}

TEST_CASE("halving doubled matrices", "[linalg]") {
  CHECK(kaplansky_halve(ExactMatrix::zero(2, 2)).factors == std::vector<GPoly>{poly({0, 1})});

  ExactMatrix block(3, 3);  // 2-block plus 1-block, then doubled
  block.at(0, 1) = GaussianRational(1);
  ExactMatrix doubled = ExactMatrix::direct_sum(block, block);
  InvariantFactors halved = kaplansky_halve(doubled);
  REQUIRE(halved.factors.size() == 2);
  CHECK(halved.factors[0] == poly({0, 1}));
  CHECK(halved.factors[1] == poly({0, 0, 1}));
  CHECK(halved == invariant_factors(block));

  ExactMatrix diag12(2, 2);
  diag12.at(0, 0) = GaussianRational(1);
  diag12.at(1, 1) = GaussianRational(2);
  CHECK_THROWS_AS(kaplansky_halve(diag12), not_a_double);
  CHECK_THROWS_AS(kaplansky_halve(ExactMatrix::zero(3, 3)), invalid_parameter);
}

TEST_CASE("doubling preserves and reflects similarity", "[linalg]") {
  SeededRng rng(37);
  for (int trial = 0; trial < 6; ++trial) {
    ExactMatrix a = random_jordan_type(rng, 3, false);
    ExactMatrix b = random_jordan_type(rng, 3, false);
    bool single = similar_decide(a, b);
    bool doubled =
        similar_decide(ExactMatrix::direct_sum(a, a), ExactMatrix::direct_sum(b, b));
    CHECK(single == doubled);
    CHECK(kaplansky_halve(ExactMatrix::direct_sum(a, a)) == invariant_factors(a));
  }
}

TEST_CASE("smith chain divisibility and product", "[linalg]") {
  SeededRng rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    ExactMatrix a = random_gaussian_matrix(rng, 4);
    InvariantFactors f = invariant_factors(a);
    for (std::size_t k = 0; k + 1 < f.factors.size(); ++k)
      CHECK(f.factors[k].divides(f.factors[k + 1]));
    CHECK(f.product() == charpoly(a));
  }
}
