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
// Symbolic coding layer: digit words over {0..N-1}, forbidden-word sets,
// pending-completion detection and the projection to N-adic intervals.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stabilab/errors.hpp"
#include "stabilab/rational.hpp"

namespace stabilab {

constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 22;

/// A finite digit string over {0..N-1}. The empty word is valid.
class Word {
 public:
  Word() = default;
  Word(std::vector<std::uint8_t> digits, int base) : digits_(std::move(digits)), base_(base) {
    if (base_ < 3) throw invalid_parameter("word base must be at least 3");
    for (auto d : digits_)
      if (d >= base_) throw invalid_parameter("digit out of range for base");
  }
  /// Convenience constructor from int initializers, e.g. Word({1,0,2}, 3).
  Word(std::initializer_list<int> digits, int base) : base_(base) {
    if (base_ < 3) throw invalid_parameter("word base must be at least 3");
    digits_.reserve(digits.size());
    for (int d : digits) {
      if (d < 0 || d >= base_) throw invalid_parameter("digit out of range for base");
      digits_.push_back(static_cast<std::uint8_t>(d));
    }
  }
  static Word empty(int base) { return Word(std::vector<std::uint8_t>{}, base); }

  std::size_t length() const { return digits_.size(); }
  bool is_empty() const { return digits_.empty(); }
  int base() const { return base_; }
  int digit(std::size_t k) const { return digits_[k]; }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  /// Truncation to the first n digits.
  Word prefix(std::size_t n) const {
    if (n > length()) throw invalid_parameter("prefix longer than word");
    return Word(std::vector<std::uint8_t>(digits_.begin(), digits_.begin() + n), base_);
  }
  /// The word with its final digit removed.
  Word parent() const {
    if (is_empty()) throw invalid_parameter("empty word has no parent");
    return prefix(length() - 1);
  }
  /// The word with its first digit removed (the left shift).
  Word shift() const {
    if (is_empty()) throw invalid_parameter("cannot shift the empty word");
    return Word(std::vector<std::uint8_t>(digits_.begin() + 1, digits_.end()), base_);
  }
  Word append(int d) const {
    Word w = *this;
    if (d < 0 || d >= base_) throw invalid_parameter("digit out of range for base");
    w.digits_.push_back(static_cast<std::uint8_t>(d));
    return w;
  }
  Word concat(const Word& other) const {
    if (other.base_ != base_) throw invalid_parameter("base mismatch in concatenation");
    Word w = *this;
    w.digits_.insert(w.digits_.end(), other.digits_.begin(), other.digits_.end());
    return w;
  }

  bool operator==(const Word& o) const { return base_ == o.base_ && digits_ == o.digits_; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const {
    if (base_ != o.base_) return base_ < o.base_;
    return digits_ < o.digits_;
  }

  std::string str() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < digits_.size(); ++k) {
      if (base_ > 10 && k > 0) out << '.';
      out << int(digits_[k]);
    }
    return out.str();
  }

 private:
  std::vector<std::uint8_t> digits_;
  int base_ = 3;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(w.base());
    for (auto d : w.digits()) {
      h ^= d;
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline bool is_prefix(const Word& p, const Word& w) {
  if (p.base() != w.base() || p.length() > w.length()) return false;
  return std::equal(p.digits().begin(), p.digits().end(), w.digits().begin());
}

inline bool is_suffix(const Word& s, const Word& w) {
  if (s.base() != w.base() || s.length() > w.length()) return false;
  return std::equal(s.digits().rbegin(), s.digits().rend(), w.digits().rbegin());
}

inline bool is_subword(const Word& k, const Word& w) {
  if (k.base() != w.base() || k.length() > w.length()) return false;
  if (k.is_empty()) return true;
  auto it = std::search(w.digits().begin(), w.digits().end(), k.digits().begin(), k.digits().end());
  return it != w.digits().end();
}

/// The word 1 0^i 2 of length i+2.
inline Word b_word(int i, int N) {
  if (i < 1) throw invalid_parameter("forbidden-word index must be positive");
  if (N < 3) throw invalid_parameter("base must be at least 3");
  std::vector<std::uint8_t> d(static_cast<std::size_t>(i) + 2, 0);
  d.front() = 1;
  d.back() = 2;
  return Word(std::move(d), N);
}

/// A finite set of forbidden words 1 0^i 2, stored by index.
class ForbiddenSet {
 public:
  ForbiddenSet(std::vector<int> indices, int base) : base_(base) {
    if (base_ < 3) throw invalid_parameter("base must be at least 3");
    for (int i : indices) {
      if (i < 1) throw invalid_parameter("forbidden-word index must be positive");
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    indices_ = std::move(indices);
  }
  static ForbiddenSet empty_set(int base) { return ForbiddenSet({}, base); }
  /// Truncation of the full family to indices 1..cap. Reports computed against
  /// a truncated set must record the cap: members longer than the working
  /// depth cannot influence weights at that depth, so depth-D computations
  /// with cap >= D-2 are exact.
  static ForbiddenSet all_up_to(int cap, int base) {
    std::vector<int> idx;
    for (int i = 1; i <= cap; ++i) idx.push_back(i);
    return ForbiddenSet(std::move(idx), base);
  }

  const std::vector<int>& indices() const { return indices_; }
  int base() const { return base_; }
  bool empty() const { return indices_.empty(); }
  bool contains_index(int i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }
  std::vector<Word> words() const {
    std::vector<Word> w;
    w.reserve(indices_.size());
    for (int i : indices_) w.push_back(b_word(i, base_));
    return w;
  }
  /// True when some member is a subword of w.
  bool any_subword_of(const Word& w) const {
    for (int i : indices_) {
      if (static_cast<std::size_t>(i) + 2 > w.length()) break;
      if (is_subword(b_word(i, base_), w)) return true;
    }
    return false;
  }
  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(indices_[k]);
    }
    return s;
  }
  bool operator==(const ForbiddenSet& o) const {
    return base_ == o.base_ && indices_ == o.indices_;
  }

 private:
  std::vector<int> indices_;
  int base_;
};

/// Textual format: comma-separated indices, e.g. "1,3" selects {1 0 2, 1 0 0 0 2}.
/// The empty string is the empty set.
inline ForbiddenSet parse_forbidden(const std::string& text, int base) {
  std::vector<int> idx;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t pos = 0;
    int v;
    try {
      v = std::stoi(token, &pos);
    } catch (const std::exception&) {
      throw parse_error("bad forbidden-set entry: " + token);
    }
    if (pos != token.size()) throw parse_error("bad forbidden-set entry: " + token);
    idx.push_back(v);
  }
  return ForbiddenSet(std::move(idx), base);
}

/// The at-most-one word i·2 whose appended digit would complete a forbidden
/// word, i.e. some member of B is a suffix of i·2. The set structure
/// guarantees at most one pending completion; this is asserted, not assumed.
inline std::optional<Word> pending_completion(const Word& i, const ForbiddenSet& B) {
  if (i.base() != B.base()) throw invalid_parameter("base mismatch between word and forbidden set");
  if (B.empty() || i.is_empty()) return std::nullopt;
  // b^z = 1 0^z 2 is a suffix of i·2 exactly when i ends with 1 0^z, which
  // pins z to the trailing-zero count of i.
  std::size_t z = 0;
  while (z < i.length() && i.digit(i.length() - 1 - z) == 0) ++z;
  if (z == 0 || z >= i.length()) return std::nullopt;
  if (i.digit(i.length() - 1 - z) != 1) return std::nullopt;
  if (!B.contains_index(static_cast<int>(z))) return std::nullopt;
  // Cross-check: no other member may match (distinct members cannot share
  // the trailing 1 0^z pattern).
  int matches = 0;
  Word i2 = i.append(2);
  for (const Word& b : B.words())
    if (is_suffix(b, i2)) ++matches;
  if (matches != 1) throw std::logic_error("pending completion is not unique");
  return i2;
}

/// The natural projection pi(i) = sum_k i_k N^{-k}; the empty word maps to 0.
inline Rat project_pi(const Word& i) {
  Rat acc(0);
  Rat scale(1);
  const Rat invN(1, i.base());
  for (std::size_t k = 0; k < i.length(); ++k) {
    scale *= invN;
    acc += scale * i.digit(k);
  }
  acc.canonicalize();
  return acc;
}

/// The projected cylinder [pi(i), pi(i) + N^{-|i|}].
struct CylinderInterval {
  Rat left;
  Rat width;
  Rat right() const { return left + width; }
};

inline CylinderInterval cylinder_interval(const Word& i) {
  return CylinderInterval{project_pi(i), inv_pow(i.base(), i.length())};
}

/// All N^K words of length K in lexicographic order. The order is part of the
/// contract: parallel consumers must reduce order-independently.
inline std::vector<Word> enumerate_words(int K, int N,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
  if (K < 0) throw invalid_parameter("depth must be nonnegative");
  if (N < 3) throw invalid_parameter("base must be at least 3");
  double est = std::pow(double(N), double(K));
  if (est > double(cap)) throw enumeration_too_large("N^K exceeds enumeration cap");
  std::uint64_t count = 1;
  for (int k = 0; k < K; ++k) count *= static_cast<std::uint64_t>(N);
  if (count > cap) throw enumeration_too_large("N^K exceeds enumeration cap");
  std::vector<Word> out;
  out.reserve(count);
  std::vector<std::uint8_t> cur(static_cast<std::size_t>(K), 0);
  for (std::uint64_t m = 0; m < count; ++m) {
    out.emplace_back(cur, N);
    for (int pos = K - 1; pos >= 0; --pos) {
      if (++cur[pos] < N) break;
      cur[pos] = 0;
    }
  }
  return out;
}

}  // namespace stabilab
