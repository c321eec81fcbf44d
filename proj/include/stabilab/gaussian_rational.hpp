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

#include <complex>
#include <optional>
#include <string>

#include "stabilab/rational.hpp"

namespace stabilab {

/// Exact square root of a nonnegative rational, when one exists.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  Int num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

/// An element of the Gaussian-rational field: the exact stand-in for complex
/// scalars in all finite-dimensional operator computations.
struct GaussianRational {
  Rat re;
  Rat im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rat r) : re(std::move(r)), im(0) { re.canonicalize(); }
  GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussianRational i() { return {Rat(0), Rat(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, Rat(-im)}; }
  /// |z|^2, an exact rational.
  Rat norm2() const {
    Rat n = re * re + im * im;
    n.canonicalize();
    return n;
  }

  GaussianRational operator-() const { return {Rat(-re), Rat(-im)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    r.canonicalize();
    i.canonicalize();
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw invalid_parameter("division by zero");
    Rat n = o.norm2();
    GaussianRational c = o.conj();
    *this *= c;
    re /= n;
    im /= n;
    re.canonicalize();
    im.canonicalize();
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) {
    return a /= b;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  std::string str() const {
    if (im == 0) return re.get_str();
    if (re == 0) return im.get_str() + "i";
    std::string s = re.get_str();
    if (im > 0) s += "+";
    return s + im.get_str() + "i";
  }
};

/// Exact square root in the Gaussian rationals, when one exists.
inline std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
  if (z.im == 0) {
    if (auto r = rat_sqrt(z.re)) return GaussianRational(*r);
    if (auto r = rat_sqrt(Rat(-z.re))) return GaussianRational(Rat(0), *r);
    return std::nullopt;
  }
  // (x + yi)^2 = u + vi needs x^2 = (u + |z|)/2 with |z| rational.
  auto mod = rat_sqrt(z.norm2());
  if (!mod) return std::nullopt;
  Rat x2 = (z.re + *mod) / 2;
  x2.canonicalize();
  auto x = rat_sqrt(x2);
  if (!x || *x == 0) return std::nullopt;
  Rat y = z.im / (2 * (*x));
  y.canonicalize();
  GaussianRational cand(*x, y);
  if (cand * cand == z) return cand;
  return std::nullopt;
}

}  // namespace stabilab
