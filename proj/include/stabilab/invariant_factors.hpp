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
// Similarity invariants over the Gaussian-rational field: the Smith normal
// form of xI - A, the invariant-factor chain it produces, and the cyclic
// basis extracted from the left transform. Similarity is decided and
// witnessed without any eigenvalue computation.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stabilab/exact_matrix.hpp"
#include "stabilab/polynomial.hpp"

namespace stabilab {

/// A matrix with Gaussian-rational polynomial entries. Only the machinery
/// needed to reduce xI - A is provided.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static PolyMatrix identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GPoly(1);
    return m;
  }
  /// The characteristic matrix xI - A.
  static PolyMatrix characteristic(const ExactMatrix& a) {
    if (!a.is_square()) throw invalid_parameter("characteristic matrix of non-square input");
    PolyMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        std::vector<GaussianRational> coeffs{-a.at(i, j)};
        if (i == j) coeffs.push_back(GaussianRational(1));
        m.at(i, j) = GPoly(std::move(coeffs));
      }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GPoly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GPoly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }
  /// row_dst -= q * row_src
  void row_axpy(std::size_t dst, const GPoly& q, std::size_t src) {
    for (std::size_t j = 0; j < cols_; ++j) at(dst, j) = at(dst, j) - q * at(src, j);
  }
  /// col_dst -= q * col_src
  void col_axpy(std::size_t dst, const GPoly& q, std::size_t src) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, dst) = at(i, dst) - q * at(i, src);
  }
  void scale_row(std::size_t r, const GaussianRational& s) {
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) = at(r, j) * s;
  }
  void scale_col(std::size_t c, const GaussianRational& s) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, c) = at(i, c) * s;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<GPoly> data_;
};

struct SmithResult {
  std::vector<GPoly> diagonal;  // monic or zero, each dividing the next
  /// Left transform inverse: original = Uinv * diag * (column transform),
  /// which is exactly the matrix whose columns generate the cyclic summands.
  PolyMatrix u_inverse{0, 0};
};

/// Smith normal form over the polynomial ring, tracking the inverse of the
/// accumulated row transform. Pivots are chosen by minimal degree; each
/// clearing pass strictly decreases the pivot degree, which gives
/// termination.
inline SmithResult smith_normal_form(PolyMatrix m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  PolyMatrix uinv = PolyMatrix::identity(m.rows());
  // Row op M <- E M is mirrored by Uinv <- Uinv E^{-1}.
  auto rec_swap = [&](std::size_t a, std::size_t b) { uinv.swap_cols(a, b); };
  auto rec_row_axpy = [&](std::size_t dst, const GPoly& q, std::size_t src) {
    // E = I - q e_dst e_src^T, E^{-1} = I + q e_dst e_src^T:
    // col_src of Uinv += q * col_dst.
    uinv.col_axpy(src, -q, dst);
  };
  auto rec_scale = [&](std::size_t r, const GaussianRational& s) {
    uinv.scale_col(r, GaussianRational(1) / s);
  };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Minimal-degree nonzero entry of the trailing submatrix.
      std::size_t pi = t, pj = t;
      int best = -1;
      for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j) {
          if (m.at(i, j).is_zero()) continue;
          if (best < 0 || m.at(i, j).degree() < best) {
            best = m.at(i, j).degree();
            pi = i;
            pj = j;
          }
        }
      if (best < 0) {  // trailing submatrix is zero
        return [&] {
          SmithResult r{.diagonal = {}, .u_inverse = uinv};
          for (std::size_t k = 0; k < n; ++k) r.diagonal.push_back(m.at(k, k));
          return r;
        }();
      }
      if (pi != t) {
        m.swap_rows(pi, t);
        rec_swap(pi, t);
      }
      if (pj != t) m.swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (m.at(i, t).is_zero()) continue;
        GPoly q = GPoly::divmod(m.at(i, t), m.at(t, t)).first;
        m.row_axpy(i, q, t);
        rec_row_axpy(i, q, t);
        if (!m.at(i, t).is_zero()) clean = false;  // remainder survives; re-pivot
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (m.at(t, j).is_zero()) continue;
        GPoly q = GPoly::divmod(m.at(t, j), m.at(t, t)).first;
        m.col_axpy(j, q, t);
        if (!m.at(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing submatrix; if not, fold the
      // offending row into row t and reduce again.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < m.rows() && divides_all; ++i)
        for (std::size_t j = t + 1; j < m.cols() && divides_all; ++j) {
          if (!m.at(t, t).divides(m.at(i, j))) {
            m.row_axpy(t, GPoly(-1), i);  // row_t += row_i
            rec_row_axpy(t, GPoly(-1), i);
            divides_all = false;
          }
        }
      if (!divides_all) continue;

      GaussianRational lead = m.at(t, t).lc();
      if (lead != GaussianRational(1)) {
        GaussianRational inv = GaussianRational(1) / lead;
        m.scale_row(t, inv);
        rec_scale(t, inv);
      }
      break;
    }
  }
  SmithResult r{.diagonal = {}, .u_inverse = uinv};
  for (std::size_t k = 0; k < n; ++k) r.diagonal.push_back(m.at(k, k));
  return r;
}

/// The divisibility chain of nonconstant similarity invariants, smallest
/// first; their product is the characteristic polynomial.
struct InvariantFactors {
  std::vector<GPoly> factors;

  bool operator==(const InvariantFactors& o) const { return factors == o.factors; }
  bool operator!=(const InvariantFactors& o) const { return !(*this == o); }

  GPoly product() const {
    GPoly p(1);
    for (const auto& f : factors) p = p * f;
    return p;
  }
  std::string str() const {
    std::string s = "(";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) s += ", ";
      s += factors[k].str();
    }
    return s + ")";
  }
};

/// Characteristic polynomial det(xI - A), computed by the trace recursion;
/// exact over any field of characteristic zero.
inline GPoly charpoly(const ExactMatrix& a) {
  if (!a.is_square()) throw invalid_parameter("characteristic polynomial of non-square input");
  const std::size_t n = a.rows();
  std::vector<GaussianRational> c(n + 1);
  c[n] = GaussianRational(1);
  ExactMatrix m = ExactMatrix::zero(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
    GaussianRational t = (a * m).trace();
    c[n - k] = -(t / GaussianRational(Rat(static_cast<long>(k))));
  }
  return GPoly(std::move(c));
}

inline InvariantFactors invariant_factors(const ExactMatrix& a) {
  SmithResult smith = smith_normal_form(PolyMatrix::characteristic(a));
  InvariantFactors out;
  for (const auto& d : smith.diagonal) {
    if (d.is_zero())
      throw std::logic_error("characteristic matrix cannot have zero invariant factors");
    if (d.degree() >= 1) out.factors.push_back(d);
  }
  // Confirm the divisibility chain and the product before returning.
  for (std::size_t k = 0; k + 1 < out.factors.size(); ++k)
    if (!out.factors[k].divides(out.factors[k + 1]))
      throw std::logic_error("invariant factors do not form a divisibility chain");
  if (out.product() != charpoly(a))
    throw std::logic_error("invariant factor product disagrees with the characteristic polynomial");
  return out;
}

/// True exactly when the two matrices are similar over the field.
inline bool similar_decide(const ExactMatrix& a, const ExactMatrix& b) {
  if (!a.is_square() || !b.is_square()) throw invalid_parameter("similarity needs square matrices");
  if (a.rows() != b.rows()) throw invalid_parameter("similarity needs equal sizes");
  return invariant_factors(a) == invariant_factors(b);
}

namespace detail {

/// Evaluates a polynomial column vector at A acting on constant vectors:
/// ev(sum_t x^t c_t) = sum_t A^t c_t, by Horner's scheme.
inline ExactMatrix ev_column(const ExactMatrix& a, const std::vector<GPoly>& column) {
  const std::size_t n = a.rows();
  int maxdeg = 0;
  for (const auto& p : column) maxdeg = std::max(maxdeg, p.degree());
  ExactMatrix g = ExactMatrix::zero(n, 1);
  for (int t = maxdeg; t >= 0; --t) {
    g = a * g;
    for (std::size_t i = 0; i < n; ++i) g.at(i, 0) += column[i].coeff(static_cast<std::size_t>(t));
  }
  return g;
}

}  // namespace detail

/// A basis realizing the cyclic decomposition: columns are g, Ag, ...,
/// A^{d-1}g for each nonconstant invariant factor of degree d, where g is the
/// evaluated generator column of the left Smith transform. Conjugating by the
/// returned matrix sends A to the direct sum of the companion matrices of its
/// invariant factors.
inline ExactMatrix rational_canonical_basis(const ExactMatrix& a) {
  const std::size_t n = a.rows();
  SmithResult smith = smith_normal_form(PolyMatrix::characteristic(a));
  ExactMatrix basis(n, n);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const GPoly& e = smith.diagonal[j];
    if (e.degree() < 1) continue;
    std::vector<GPoly> u_col(n);
    for (std::size_t i = 0; i < n; ++i) u_col[i] = smith.u_inverse.at(i, j);
    ExactMatrix g = detail::ev_column(a, u_col);
    for (int t = 0; t < e.degree(); ++t) {
      if (col >= n) throw std::logic_error("cyclic basis overflow");
      basis.set_block(0, col, g);
      ++col;
      if (t + 1 < e.degree()) g = a * g;
    }
  }
  if (col != n) throw std::logic_error("cyclic basis incomplete");
  return basis;
}

/// Explicit similarity witness R with B = R A R^{-1}, built by composing the
/// two cyclic-basis transition matrices and verified by exact multiplication.
inline ExactMatrix similarity_witness(const ExactMatrix& a, const ExactMatrix& b) {
  if (!similar_decide(a, b)) throw no_witness("matrices are not similar");
  ExactMatrix pa = rational_canonical_basis(a);
  ExactMatrix pb = rational_canonical_basis(b);
  ExactMatrix r = pb * pa.inverse();
  if (b * r != r * a) throw std::logic_error("similarity witness failed verification");
  return r;
}

/// Invariant factors of any matrix whose doubling is similar to M. The
/// factors of a doubled matrix pair up exactly; inputs without that pairing
/// are rejected.
inline InvariantFactors kaplansky_halve(const ExactMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0)
    throw invalid_parameter("halving needs an even-dimensional square matrix");
  InvariantFactors full = invariant_factors(m);
  if (full.factors.size() % 2 != 0)
    throw not_a_double("odd number of invariant factors");
  InvariantFactors half;
  for (std::size_t k = 0; k < full.factors.size(); k += 2) {
    if (full.factors[k] != full.factors[k + 1])
      throw not_a_double("invariant factors do not pair up");
    half.factors.push_back(full.factors[k]);
  }
  return half;
}

}  // namespace stabilab
