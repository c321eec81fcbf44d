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

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "stabilab/errors.hpp"

namespace stabilab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw invalid_parameter("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// base^exp as an exact integer, exp >= 0.
inline Int int_pow(unsigned long base, unsigned long exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

/// base^{-exp} as an exact rational, base >= 1.
inline Rat inv_pow(unsigned long base, unsigned long exp) {
  Rat r(Int(1), int_pow(base, exp));
  r.canonicalize();
  return r;
}

/// q^exp for integer exp of either sign.
inline Rat rat_pow(const Rat& q, long exp) {
  if (exp == 0) return Rat(1);
  if (q == 0 && exp < 0) throw invalid_parameter("0 raised to a negative power");
  Rat base = exp > 0 ? q : Rat(1) / q;
  unsigned long e = exp > 0 ? exp : -exp;
  Rat acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

/// Parses "p", "-p" or "p/q". Throws parse_error on malformed input.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw parse_error("bad rational literal: " + s);
  if (r.get_den() == 0) throw parse_error("zero denominator: " + s);
  r.canonicalize();
  return r;
}

/// Smallest rational of the form ceil(c * 2^20) / 2^20 where c is a certified
/// upper bound on ((N-1)/2)^log2(N-1), the constant in the weight decay bound.
/// Computed with round-up interval arithmetic so the result always dominates
/// the exact value.
inline Rat decay_constant_upper(int N) {
  if (N < 3) throw invalid_parameter("base must be at least 3");
  mpfr_t expo, base, val;
  mpfr_init2(expo, 128);
  mpfr_init2(base, 128);
  mpfr_init2(val, 128);
  mpfr_set_ui(expo, static_cast<unsigned long>(N - 1), MPFR_RNDU);
  mpfr_log2(expo, expo, MPFR_RNDU);
  mpfr_set_ui(base, static_cast<unsigned long>(N - 1), MPFR_RNDU);
  mpfr_div_ui(base, base, 2, MPFR_RNDU);
  // base >= 1 for N >= 3, so rounding the exponent up rounds the power up.
  mpfr_pow(val, base, expo, MPFR_RNDU);
  mpfr_mul_2ui(val, val, 20, MPFR_RNDU);
  mpfr_ceil(val, val);
  Int num;
  mpfr_get_z(num.get_mpz_t(), val, MPFR_RNDU);
  mpfr_clear(expo);
  mpfr_clear(base);
  mpfr_clear(val);
  Rat r(num, int_pow(2, 20));
  r.canonicalize();
  return r;
}

}  // namespace stabilab
