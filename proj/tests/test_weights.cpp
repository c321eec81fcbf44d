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

#include <sstream>
#include <thread>

#include "stabilab/weights.hpp"

using namespace stabilab;

namespace {

// Independent oracle for the weight recursion: direct digit-by-digit product
// with a naive suffix scan, sharing no code with the memoized table.
Rat p_oracle(const Word& word, const ForbiddenSet& B, bool tilde) {
  const int N = word.base();
  Rat acc(1);
  for (std::size_t n = 1; n <= word.length(); ++n) {
    // Does some member complete at position n, i.e. is some b a suffix of
    // word|_{n-1} with 2 appended?
    Word prefix2 = word.prefix(n - 1).append(2);
    int pending = 0;
    for (const Word& b : B.words()) {
      if (b.length() > prefix2.length()) continue;
      bool match = true;
      for (std::size_t k = 0; k < b.length(); ++k)
        if (prefix2.digit(prefix2.length() - b.length() + k) != b.digit(k)) {
          match = false;
          break;
        }
      if (match) ++pending;
    }
    REQUIRE(pending <= 1);
    bool forced = pending == 1 && word.digit(n - 1) == 2;
    if (forced) {
      if (tilde) return Rat(0);
      acc *= inv_pow(2, n);
    } else if (tilde) {
      acc *= Rat(1, N - pending);
    } else {
      Rat factor = (Rat(1) - Rat(pending) * inv_pow(2, n)) / (N - pending);
      acc *= factor;
    }
  }
  acc.canonicalize();
  return acc;
}

}  // namespace

TEST_CASE("weight values match the hand recursion", "[weights]") {
  ForbiddenSet B({1}, 3);
  CHECK(weight_p(Word({1, 0, 2}, 3), B) == Rat(1, 72));
  CHECK(weight_p(Word({1, 0, 0}, 3), B) == Rat(7, 144));
  ForbiddenSet empty = ForbiddenSet::empty_set(3);
  CHECK(weight_p(Word({2, 1, 0}, 3), empty) == Rat(1, 27));

  CHECK(weight_p_tilde(Word({1, 0, 2}, 3), B) == 0);
  CHECK(weight_p_tilde(Word({1, 0, 0}, 3), B) == Rat(1, 18));
  CHECK(weight_p_tilde(Word({0, 1}, 3), empty) == Rat(1, 9));
}

TEST_CASE("weights agree with the independent oracle", "[weights]") {
  std::vector<ForbiddenSet> sets = {ForbiddenSet::empty_set(3), ForbiddenSet({1}, 3),
                                    ForbiddenSet({1, 3}, 3)};
  for (const ForbiddenSet& B : sets) {
    WeightTable table(B);
    for (int K = 0; K <= 5; ++K) {
      table.for_each_depth(K, [&](const Word& w, const Rat& p, const Rat& pt) {
        CHECK(p == p_oracle(w, B, false));
        CHECK(pt == p_oracle(w, B, true));
        // The sweep and the memoized path must agree.
        CHECK(p == table.p(w));
        CHECK(pt == table.p_tilde(w));
      });
    }
  }
  ForbiddenSet b4 = ForbiddenSet({1, 2}, 4);
  WeightTable table(b4);
  table.for_each_depth(4, [&](const Word& w, const Rat& p, const Rat& pt) {
    CHECK(p == p_oracle(w, b4, false));
    CHECK(pt == p_oracle(w, b4, true));
  });
}

TEST_CASE("splitting consistency", "[weights]") {
  ForbiddenSet B({1}, 3);
  ConsistencyResult r = check_consistency(Word({1, 0}, 3), B);
  CHECK(r.equal);
  CHECK(r.rhs == Rat(1, 9));
  CHECK(r.lhs == Rat(1, 72) + Rat(7, 144) + Rat(7, 144));

  ForbiddenSet empty = ForbiddenSet::empty_set(3);
  ConsistencyResult u = check_consistency(Word({2, 0}, 3), empty);
  CHECK(u.equal);
  CHECK(u.rhs == Rat(1, 9));

  ConsistencyResult t = check_consistency(Word({1, 0}, 3), B, /*tilde=*/true);
  CHECK(t.equal);
  CHECK(t.lhs == Rat(0) + Rat(1, 18) + Rat(1, 18));
}

TEST_CASE("consistency holds across a full sweep", "[weights]") {
  for (const ForbiddenSet& B : {ForbiddenSet({1}, 3), ForbiddenSet({1, 2}, 3)}) {
    WeightTable table(B);
    for (int K = 0; K <= 4; ++K) {
      table.for_each_depth(K, [&](const Word& w, const Rat&, const Rat&) {
        CHECK(check_consistency(w, B).equal);
        CHECK(check_consistency(w, B, true).equal);
      });
    }
  }
}

TEST_CASE("normalization at every depth", "[weights]") {
  for (const ForbiddenSet& B : {ForbiddenSet::empty_set(3), ForbiddenSet({1}, 3),
                                ForbiddenSet({1, 3}, 3), ForbiddenSet({1, 2}, 4)}) {
    WeightTable table(B);
    for (int K = 0; K <= 6; ++K) {
      CHECK(normalization_sum(table, K) == 1);
      CHECK(normalization_sum(table, K, true) == 1);
    }
  }
}

TEST_CASE("decay bound", "[weights]") {
  ForbiddenSet B({1}, 3);
  CHECK(decay_constant_upper(3) == 1);
  CHECK(decay_constant_upper(4) >= 1);
  CHECK(check_decay(Word({1, 0, 2}, 3), B));
  CHECK(check_decay(Word({0}, 3), B));
  CHECK(weight_p(Word({1, 0, 2}, 3), B) <= Rat(1, 8));
  CHECK(weight_p_tilde(Word({1, 0, 0}, 3), B) <= Rat(1, 8));
}

TEST_CASE("decay holds for every enumerated word", "[weights]") {
  for (const ForbiddenSet& B : {ForbiddenSet({1}, 3), ForbiddenSet({1, 2}, 4)}) {
    WeightTable table(B);
    const Rat c_up = decay_constant_upper(B.base());
    for (int K = 0; K <= 6; ++K) {
      Rat bound = inv_pow(B.base() - 1, K);
      table.for_each_depth(K, [&](const Word&, const Rat& p, const Rat& pt) {
        CHECK(p <= c_up * bound);
        CHECK(pt <= bound);
      });
    }
  }
}

TEST_CASE("positivity, vanishing and monotone refinement", "[weights]") {
  ForbiddenSet B({1}, 3);
  WeightTable table(B);
  for (int K = 0; K <= 5; ++K) {
    table.for_each_depth(K, [&](const Word& w, const Rat& p, const Rat& pt) {
      CHECK(p > 0);
      CHECK((pt == 0) == B.any_subword_of(w));
      for (int d = 0; d < 3; ++d) CHECK(table.p(w.append(d)) <= p);
    });
  }
}

TEST_CASE("concurrent cold evaluation is deterministic", "[weights]") {
  ForbiddenSet B({1, 2}, 3);
  WeightTable table(B);
  auto words = enumerate_words(5, 3);
  std::vector<Rat> parallel(words.size());
  std::vector<std::thread> pool;
  const std::size_t workers = 4;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < words.size(); k += workers) parallel[k] = table.p(words[k]);
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t k = 0; k < words.size(); ++k)
    CHECK(parallel[k] == p_oracle(words[k], B, false));
}

TEST_CASE("weight CSV dump", "[weights]") {
  ForbiddenSet B({1}, 3);
  WeightTable table(B);
  std::ostringstream out;
  write_weights_csv(out, table, 2);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "word,p_num,p_den,ptilde_num,ptilde_den");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);
  CHECK(out.str().find("00,1,9,1,9") != std::string::npos);
}
