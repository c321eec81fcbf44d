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

#include <set>

#include "stabilab/words.hpp"

using namespace stabilab;

namespace {

// Independent suffix-scan oracle for the pending completion: try every member
// of the set against the word with 2 appended, by direct digit comparison.
std::optional<Word> pending_oracle(const Word& i, const ForbiddenSet& B) {
  Word i2 = i.append(2);
  for (const Word& b : B.words()) {
    if (b.length() > i2.length()) continue;
    bool match = true;
    for (std::size_t k = 0; k < b.length(); ++k)
      if (i2.digit(i2.length() - b.length() + k) != b.digit(k)) {
        match = false;
        break;
      }
    if (match) return i2;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("forbidden words by index", "[words]") {
  CHECK(b_word(1, 3) == Word({1, 0, 2}, 3));
  CHECK(b_word(2, 3) == Word({1, 0, 0, 2}, 3));
  CHECK(b_word(1, 4) == Word({1, 0, 2}, 4));
  CHECK_THROWS_AS(b_word(0, 3), invalid_parameter);
  CHECK_THROWS_AS(b_word(1, 2), invalid_parameter);
}

TEST_CASE("structural properties of the forbidden family", "[words]") {
  const int N = 3;
  for (int i = 1; i <= 12; ++i) {
    Word bi = b_word(i, N);
    // No nontrivial proper prefix of b^i is a suffix of b^i.
    for (std::size_t len = 1; len < bi.length(); ++len)
      CHECK_FALSE(is_suffix(bi.prefix(len), bi));
    for (int j = 1; j <= 12; ++j) {
      if (i == j) continue;
      Word bj = b_word(j, N);
      // No nontrivial prefix of b^i is a suffix of b^j, and neither word is
      // a subword of the other.
      for (std::size_t len = 1; len <= bi.length(); ++len)
        CHECK_FALSE(is_suffix(bi.prefix(len), bj));
      CHECK_FALSE(is_subword(bi, bj));
    }
  }
}

TEST_CASE("pending completion detection", "[words]") {
  ForbiddenSet B({1}, 3);
  CHECK(pending_completion(Word({1, 0}, 3), B) == Word({1, 0, 2}, 3));
  CHECK_FALSE(pending_completion(Word({0, 1}, 3), B).has_value());
  CHECK(pending_completion(Word({2, 1, 0}, 3), B) == Word({2, 1, 0, 2}, 3));
  CHECK_THROWS_AS(pending_completion(Word({1, 0}, 4), B), invalid_parameter);
}

TEST_CASE("pending completion agrees with the suffix-scan oracle", "[words]") {
  for (const ForbiddenSet& B : {ForbiddenSet({1}, 3), ForbiddenSet({1, 3}, 3),
                                ForbiddenSet({2}, 3), ForbiddenSet::empty_set(3)}) {
    for (int K = 0; K <= 5; ++K) {
      for (const Word& w : enumerate_words(K, 3)) {
        auto got = pending_completion(w, B);
        auto expect = pending_oracle(w, B);
        CHECK(got == expect);
        if (got) {
          // Only an appended 2 can complete, and the result ends with 2.
          CHECK(got->digit(got->length() - 1) == 2);
          CHECK(got->parent() == w);
        }
      }
    }
  }
}

TEST_CASE("projection to N-adic rationals", "[words]") {
  CHECK(project_pi(Word({1, 0, 2}, 3)) == Rat(11, 27));
  CHECK(project_pi(Word::empty(3)) == 0);
  CHECK(project_pi(Word({2, 2}, 3)) == Rat(8, 9));
}

TEST_CASE("projection is injective onto the N-adic grid", "[words]") {
  for (int K = 0; K <= 4; ++K) {
    std::set<Rat> values;
    for (const Word& w : enumerate_words(K, 3)) values.insert(project_pi(w));
    CHECK(values.size() == enumerate_words(K, 3).size());
    Int den = int_pow(3, K);
    std::size_t index = 0;
    for (const Rat& v : values) {
      Rat expect(Int(index), den);
      expect.canonicalize();
      CHECK(v == expect);
      ++index;
    }
  }
}

TEST_CASE("cylinder intervals", "[words]") {
  CylinderInterval c = cylinder_interval(Word({1, 0, 2}, 3));
  CHECK(c.left == Rat(11, 27));
  CHECK(c.right() == Rat(4, 9));
  CylinderInterval whole = cylinder_interval(Word::empty(3));
  CHECK(whole.left == 0);
  CHECK(whole.right() == 1);
  CylinderInterval quarter = cylinder_interval(Word({0}, 4));
  CHECK(quarter.left == 0);
  CHECK(quarter.width == Rat(1, 4));
}

TEST_CASE("same-length cylinders overlap in at most a point", "[words]") {
  auto words = enumerate_words(3, 3);
  for (std::size_t a = 0; a + 1 < words.size(); ++a) {
    CylinderInterval ca = cylinder_interval(words[a]);
    CylinderInterval cb = cylinder_interval(words[a + 1]);
    CHECK(ca.right() <= cb.left);  // adjacent closed intervals meet at one point at most
  }
}

TEST_CASE("word enumeration", "[words]") {
  auto empty_level = enumerate_words(0, 3);
  REQUIRE(empty_level.size() == 1);
  CHECK(empty_level[0].is_empty());

  auto level1 = enumerate_words(1, 3);
  REQUIRE(level1.size() == 3);
  CHECK(level1[0] == Word({0}, 3));
  CHECK(level1[2] == Word({2}, 3));

  auto level2 = enumerate_words(2, 3);
  REQUIRE(level2.size() == 9);
  CHECK(level2.front() == Word({0, 0}, 3));
  CHECK(level2.back() == Word({2, 2}, 3));

  CHECK_THROWS_AS(enumerate_words(20, 3, 1000), enumeration_too_large);
  CHECK_THROWS_AS(enumerate_words(-1, 3), invalid_parameter);
}

TEST_CASE("forbidden set parsing and textual format", "[words]") {
  ForbiddenSet b13 = parse_forbidden("1,3", 3);
  CHECK(b13.indices() == std::vector<int>{1, 3});
  CHECK(b13.str() == "1,3");
  CHECK(parse_forbidden("", 3).empty());
  CHECK(parse_forbidden("3,1,1", 3).indices() == std::vector<int>{1, 3});
  CHECK_THROWS_AS(parse_forbidden("1,x", 3), parse_error);
  CHECK_THROWS_AS(parse_forbidden("0", 3), invalid_parameter);
  ForbiddenSet capped = ForbiddenSet::all_up_to(4, 3);
  CHECK(capped.indices() == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("subword detection drives the avoiding set", "[words]") {
  ForbiddenSet B({1}, 3);
  CHECK(B.any_subword_of(Word({2, 1, 0, 2, 1}, 3)));
  CHECK_FALSE(B.any_subword_of(Word({2, 1, 1, 2}, 3)));
}
