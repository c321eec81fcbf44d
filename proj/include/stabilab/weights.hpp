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
// The exact weight recursions p and p~ for a fixed forbidden set, with their
// consistency and decay checks. Everything is rational; there is no floating
// point anywhere in this module.

#pragma once

#include <mutex>
#include <ostream>
#include <unordered_map>
#include <utility>

#include "stabilab/rational.hpp"
#include "stabilab/words.hpp"

namespace stabilab {

/// Both weight factors contributed by the final digit of a word of length n.
struct WeightStep {
  Rat p;
  Rat p_tilde;
};

/// Memoized evaluator for the weight functions of one (base, forbidden set)
/// pair. Values are determined by the word alone, so concurrent evaluation is
/// safe; the cache is guarded by a mutex and every writer stores the same
/// value.
class WeightTable {
 public:
  explicit WeightTable(ForbiddenSet forbidden) : forbidden_(std::move(forbidden)) {}

  const ForbiddenSet& forbidden() const { return forbidden_; }
  int base() const { return forbidden_.base(); }

  /// Weight factor for appending `digit` to `parent`.
  WeightStep step(const Word& parent, int digit) const {
    const int N = base();
    const unsigned long n = static_cast<unsigned long>(parent.length()) + 1;
    auto pending = pending_completion(parent, forbidden_);
    if (pending) {
      if (digit == 2) return {inv_pow(2, n), Rat(0)};
      Rat p = (Rat(1) - inv_pow(2, n)) / (N - 1);
      p.canonicalize();
      return {p, Rat(1, N - 1)};
    }
    return {Rat(1, N), Rat(1, N)};
  }

  Rat p(const Word& i) const { return values(i).first; }
  Rat p_tilde(const Word& i) const { return values(i).second; }

  /// Visits every word of length K in lexicographic order with its exact
  /// weights. visit(word, p, p_tilde). Does not touch the cache.
  template <class F>
  void for_each_depth(int K, F&& visit) const {
    Word root = Word::empty(base());
    walk(root, Rat(1), Rat(1), K, visit);
  }

  /// Same traversal restricted to extensions of `prefix`, for partitioned
  /// parallel sweeps with order-independent reduction.
  template <class F>
  void for_each_extension(const Word& prefix, int K, F&& visit) const {
    auto base_vals = values(prefix);
    walk(prefix, base_vals.first, base_vals.second, K, visit);
  }

 private:
  std::pair<Rat, Rat> values(const Word& i) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(i);
      if (it != cache_.end()) return it->second;
    }
    std::pair<Rat, Rat> acc{Rat(1), Rat(1)};
    Word w = Word::empty(base());
    for (std::size_t k = 0; k < i.length(); ++k) {
      WeightStep s = step(w, i.digit(k));
      acc.first *= s.p;
      acc.second *= s.p_tilde;
      w = w.append(i.digit(k));
      std::lock_guard<std::mutex> lock(mutex_);
      cache_.emplace(w, acc);
    }
    return acc;
  }

  template <class F>
  void walk(const Word& w, const Rat& p, const Rat& pt, int remaining, F& visit) const {
    if (remaining == 0) {
      visit(w, p, pt);
      return;
    }
    for (int d = 0; d < base(); ++d) {
      WeightStep s = step(w, d);
      walk(w.append(d), Rat(p * s.p), Rat(pt * s.p_tilde), remaining - 1, visit);
    }
  }

  ForbiddenSet forbidden_;
  mutable std::unordered_map<Word, std::pair<Rat, Rat>, WordHash> cache_;
  mutable std::mutex mutex_;
};

inline Rat weight_p(const Word& i, const ForbiddenSet& B) {
  if (i.base() != B.base()) throw invalid_parameter("base mismatch between word and forbidden set");
  return WeightTable(B).p(i);
}

inline Rat weight_p_tilde(const Word& i, const ForbiddenSet& B) {
  if (i.base() != B.base()) throw invalid_parameter("base mismatch between word and forbidden set");
  return WeightTable(B).p_tilde(i);
}

struct ConsistencyResult {
  Rat lhs;  // sum of the successors' weights
  Rat rhs;  // the word's own weight
  bool equal;
};

/// The splitting identity: the weight of a word equals the sum of the weights
/// of its N successor words. Checked for either weight function.
inline ConsistencyResult check_consistency(const Word& i, const ForbiddenSet& B,
                                           bool tilde = false) {
  WeightTable table(B);
  Rat rhs = tilde ? table.p_tilde(i) : table.p(i);
  Rat lhs(0);
  for (int d = 0; d < B.base(); ++d) {
    Word child = i.append(d);
    lhs += tilde ? table.p_tilde(child) : table.p(child);
  }
  lhs.canonicalize();
  return {lhs, rhs, lhs == rhs};
}

/// The decay bound p(i) <= C_N (N-1)^{-|i|} and p~(i) <= (N-1)^{-|i|}, with
/// C_N replaced by its dyadic upper rounding so the comparison stays exact.
inline bool check_decay(const Word& i, const ForbiddenSet& B) {
  WeightTable table(B);
  const int N = B.base();
  Rat bound = inv_pow(N - 1, i.length());
  return table.p(i) <= decay_constant_upper(N) * bound && table.p_tilde(i) <= bound;
}

/// Exact sum of p over all words of length K (1 for every valid table).
inline Rat normalization_sum(const WeightTable& table, int K, bool tilde = false) {
  Rat total(0);
  table.for_each_depth(K, [&](const Word&, const Rat& p, const Rat& pt) {
    total += tilde ? pt : p;
  });
  total.canonicalize();
  return total;
}

/// Largest p over all words of length K; drives the non-atomicity bound.
inline Rat max_weight_at_depth(const WeightTable& table, int K) {
  Rat best(0);
  table.for_each_depth(K, [&](const Word&, const Rat& p, const Rat&) {
    if (p > best) best = p;
  });
  return best;
}

/// CSV dump: word, p_num, p_den, ptilde_num, ptilde_den.
inline void write_weights_csv(std::ostream& out, const WeightTable& table, int K) {
  out << "word,p_num,p_den,ptilde_num,ptilde_den\n";
  table.for_each_depth(K, [&](const Word& w, const Rat& p, const Rat& pt) {
    out << w.str() << ',' << p.get_num().get_str() << ',' << p.get_den().get_str() << ','
        << pt.get_num().get_str() << ',' << pt.get_den().get_str() << '\n';
  });
}

}  // namespace stabilab
