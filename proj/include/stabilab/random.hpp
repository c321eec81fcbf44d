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
// Deterministic seeded randomness for the operator test batteries. The
// engine's output sequence is pinned by the standard, and values are derived
// by plain modular reduction so identical seeds give identical batteries on
// every platform.

#pragma once

#include <random>

#include "stabilab/exact_matrix.hpp"

namespace stabilab {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi]; the slight modulo bias is irrelevant
  /// for test-input generation and keeps results platform-independent.
  long range(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Dense matrix with small Gaussian-rational entries.
inline ExactMatrix random_gaussian_matrix(SeededRng& rng, std::size_t n,
                                          bool complex_entries = true) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat re(rng.range(-3, 3), rng.range(1, 2));
      re.canonicalize();
      Rat im(0);
      if (complex_entries && rng.range(0, 2) == 0) {
        im = Rat(rng.range(-2, 2), 1);
      }
      m.at(i, j) = GaussianRational(re, im);
    }
  return m;
}

/// Invertible integer matrix with determinant +-1: a product of a unit lower
/// and unit upper triangular matrix, so the exact inverse stays small.
inline ExactMatrix random_unimodular(SeededRng& rng, std::size_t n) {
  ExactMatrix lower = ExactMatrix::identity(n);
  ExactMatrix upper = ExactMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower.at(i, j) = GaussianRational(rng.range(-2, 2));
      upper.at(j, i) = GaussianRational(rng.range(-2, 2));
    }
  return lower * upper;
}

/// Single Jordan block with the given eigenvalue.
inline ExactMatrix jordan_block(const GaussianRational& eigenvalue, std::size_t size) {
  ExactMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    m.at(i, i) = eigenvalue;
    if (i + 1 < size) m.at(i, i + 1) = GaussianRational(1);
  }
  return m;
}

/// Direct sum of random Jordan blocks filling dimension n, optionally
/// conjugated by a random unimodular matrix.
inline ExactMatrix random_jordan_type(SeededRng& rng, std::size_t n, bool conjugate = true) {
  ExactMatrix m(0, 0);
  std::size_t used = 0;
  while (used < n) {
    std::size_t size = static_cast<std::size_t>(rng.range(1, static_cast<long>(n - used)));
    GaussianRational lambda(Rat(rng.range(-2, 2)));
    if (rng.range(0, 3) == 0) lambda = lambda + GaussianRational(Rat(0), Rat(1));
    ExactMatrix blk = jordan_block(lambda, size);
    m = used == 0 ? blk : ExactMatrix::direct_sum(m, blk);
    used += size;
  }
  if (conjugate) {
    ExactMatrix r = random_unimodular(rng, n);
    return r * m * r.inverse();
  }
  return m;
}

/// Gaussian-rational unitary: a signed permutation with fourth-root-of-unity
/// phases, occasionally mixed with an exact rational rotation block.
inline ExactMatrix random_exact_unitary(SeededRng& rng, std::size_t n) {
  // Random permutation via seeded selection.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(i - 1)));
    std::swap(perm[i - 1], perm[j]);
  }
  ExactMatrix u(n, n);
  const GaussianRational phases[4] = {GaussianRational(1), GaussianRational(-1),
                                      GaussianRational::i(), -GaussianRational::i()};
  for (std::size_t i = 0; i < n; ++i) u.at(perm[i], i) = phases[rng.range(0, 3)];
  if (n >= 2 && rng.range(0, 1) == 0) {
    // Embed the 3-4-5 rotation in coordinates 0, 1 of an identity and
    // multiply in; stays exactly unitary.
    ExactMatrix rot = ExactMatrix::identity(n);
    rot.at(0, 0) = GaussianRational(Rat(3, 5));
    rot.at(0, 1) = GaussianRational(Rat(4, 5));
    rot.at(1, 0) = GaussianRational(Rat(-4, 5));
    rot.at(1, 1) = GaussianRational(Rat(3, 5));
    u = u * rot;
  }
  return u;
}

}  // namespace stabilab
