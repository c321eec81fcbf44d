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

#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stabilab/exact_matrix.hpp"
#include "stabilab/gaussian_rational.hpp"

namespace stabilab {

/// Univariate polynomial over the Gaussian rationals, coefficients stored in
/// ascending degree with no trailing zeros. The zero polynomial has degree -1.
class GPoly {
 public:
  GPoly() = default;
  explicit GPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }
  GPoly(const GaussianRational& constant) : c_{constant} { trim(); }  // NOLINT
  GPoly(long constant) : c_{GaussianRational(constant)} { trim(); }   // NOLINT

  static GPoly x() { return GPoly({GaussianRational(0), GaussianRational(1)}); }
  /// x - a, the linear factor with root a.
  static GPoly linear(const GaussianRational& a) { return GPoly({-a, GaussianRational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const GaussianRational& lc() const {
    if (is_zero()) throw invalid_parameter("leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !is_zero() && lc() == GaussianRational(1); }
  GaussianRational coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : GaussianRational(0);
  }
  const std::vector<GaussianRational>& coeffs() const { return c_; }

  bool operator==(const GPoly& o) const { return c_ == o.c_; }
  bool operator!=(const GPoly& o) const { return !(*this == o); }

  GPoly operator-() const {
    GPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  GPoly operator+(const GPoly& o) const {
    std::vector<GaussianRational> out(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
    return GPoly(std::move(out));
  }
  GPoly operator-(const GPoly& o) const { return *this + (-o); }
  GPoly operator*(const GPoly& o) const {
    if (is_zero() || o.is_zero()) return GPoly();
    std::vector<GaussianRational> out(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    return GPoly(std::move(out));
  }
  GPoly operator*(const GaussianRational& s) const {
    GPoly r = *this;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
  }

  GaussianRational eval(const GaussianRational& at) const {
    GaussianRational acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * at + c_[k];
    return acc;
  }

  /// p(x^n): spreads the coefficients n steps apart.
  GPoly compose_power(unsigned n) const {
    if (n == 0) throw invalid_parameter("compose_power needs n >= 1");
    if (is_zero()) return GPoly();
    std::vector<GaussianRational> out(n * (c_.size() - 1) + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) out[k * n] = c_[k];
    return GPoly(std::move(out));
  }

  GPoly monic() const {
    if (is_zero()) return GPoly();
    return *this * (GaussianRational(1) / lc());
  }

  /// Euclidean division on field coefficients: returns {quotient, remainder}
  /// with deg remainder < deg divisor.
  static std::pair<GPoly, GPoly> divmod(const GPoly& num, const GPoly& den) {
    if (den.is_zero()) throw invalid_parameter("polynomial division by zero");
    if (num.degree() < den.degree()) return {GPoly(), num};
    std::vector<GaussianRational> rem = num.c_;
    std::vector<GaussianRational> quot(num.c_.size() - den.c_.size() + 1);
    GaussianRational inv_lc = GaussianRational(1) / den.lc();
    for (std::size_t k = quot.size(); k-- > 0;) {
      GaussianRational f = rem[k + den.c_.size() - 1] * inv_lc;
      quot[k] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < den.c_.size(); ++j) rem[k + j] -= f * den.c_[j];
    }
    return {GPoly(std::move(quot)), GPoly(std::move(rem))};
  }

  bool divides(const GPoly& other) const {
    if (is_zero()) return other.is_zero();
    return divmod(other, *this).second.is_zero();
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      if (!first) out << " + ";
      first = false;
      if (k == 0 || c_[k] != GaussianRational(1)) {
        out << "(" << c_[k].str() << ")";
        if (k > 0) out << "*";
      }
      if (k > 0) {
        out << var;
        if (k > 1) out << "^" << k;
      }
    }
    return out.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<GaussianRational> c_;
};

/// Monic greatest common divisor by the Euclidean algorithm.
inline GPoly poly_gcd(GPoly a, GPoly b) {
  while (!b.is_zero()) {
    GPoly r = GPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

/// Resultant via the Sylvester matrix determinant; nonzero exactly when the
/// two polynomials share no root.
inline GaussianRational resultant(const GPoly& f, const GPoly& g) {
  if (f.is_zero() || g.is_zero()) return GaussianRational(0);
  const int m = f.degree(), n = g.degree();
  if (m == 0) {
    GaussianRational acc(1);
    for (int k = 0; k < n; ++k) acc *= f.coeff(0);
    return acc;
  }
  if (n == 0) {
    GaussianRational acc(1);
    for (int k = 0; k < m; ++k) acc *= g.coeff(0);
    return acc;
  }
  ExactMatrix s(m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s.at(r, r + k) = f.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s.at(n + r, r + k) = g.coeff(n - k);
  return s.determinant();
}

}  // namespace stabilab
