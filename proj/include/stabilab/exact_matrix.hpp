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

#include <json.hpp>

#include <utility>
#include <vector>

#include "stabilab/gaussian_rational.hpp"

namespace stabilab {

/// A dense matrix over the Gaussian rationals with fully exact arithmetic.
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
  }
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return ExactMatrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  GaussianRational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussianRational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

  ExactMatrix operator+(const ExactMatrix& o) const {
    check_same_shape(o);
    ExactMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
  }
  ExactMatrix operator-(const ExactMatrix& o) const {
    check_same_shape(o);
    ExactMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }
  ExactMatrix operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw invalid_parameter("matrix product dimension mismatch");
    ExactMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const GaussianRational& aik = at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (o.at(k, j).is_zero()) continue;
          r.at(i, j) += aik * o.at(k, j);
        }
      }
    }
    return r;
  }
  ExactMatrix operator*(const GaussianRational& s) const {
    ExactMatrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
  }
  friend ExactMatrix operator*(const GaussianRational& s, const ExactMatrix& m) { return m * s; }

  ExactMatrix transpose() const {
    ExactMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  /// Conjugate transpose; the exact adjoint over the Gaussian rationals.
  ExactMatrix adjoint() const {
    ExactMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
  }

  GaussianRational trace() const {
    if (!is_square()) throw invalid_parameter("trace of a non-square matrix");
    GaussianRational t;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!v.is_zero()) return false;
    return true;
  }

  ExactMatrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    if (i0 + r > rows_ || j0 + c > cols_) throw invalid_parameter("block out of range");
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
  }
  void set_block(std::size_t i0, std::size_t j0, const ExactMatrix& m) {
    if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_)
      throw invalid_parameter("block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) at(i0 + i, j0 + j) = m.at(i, j);
  }

  static ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, a.cols_, b);
    return m;
  }

  static ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a.at(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            m.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
      }
    return m;
  }

  ExactMatrix pow(unsigned long e) const {
    if (!is_square()) throw invalid_parameter("power of a non-square matrix");
    ExactMatrix acc = identity(rows_);
    ExactMatrix base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Reduced row echelon form in place; returns the rank and records the
  /// pivot columns.
  std::size_t rref(std::vector<std::size_t>* pivot_cols = nullptr) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
      std::size_t sel = rank;
      while (sel < rows_ && at(sel, col).is_zero()) ++sel;
      if (sel == rows_) continue;
      if (sel != rank)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(rank, j));
      GaussianRational inv = GaussianRational(1) / at(rank, col);
      for (std::size_t j = col; j < cols_; ++j) at(rank, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == rank || at(i, col).is_zero()) continue;
        GaussianRational f = at(i, col);
        for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(rank, j);
      }
      if (pivot_cols) pivot_cols->push_back(col);
      ++rank;
    }
    return rank;
  }

  std::size_t rank() const {
    ExactMatrix copy = *this;
    return copy.rref();
  }

  GaussianRational determinant() const {
    if (!is_square()) throw invalid_parameter("determinant of a non-square matrix");
    ExactMatrix m = *this;
    GaussianRational det(1);
    for (std::size_t col = 0; col < cols_; ++col) {
      std::size_t sel = col;
      while (sel < rows_ && m.at(sel, col).is_zero()) ++sel;
      if (sel == rows_) return GaussianRational(0);
      if (sel != col) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(col, j));
        det = -det;
      }
      det *= m.at(col, col);
      GaussianRational inv = GaussianRational(1) / m.at(col, col);
      for (std::size_t i = col + 1; i < rows_; ++i) {
        if (m.at(i, col).is_zero()) continue;
        GaussianRational f = m.at(i, col) * inv;
        for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
      }
    }
    return det;
  }

  bool is_invertible() const { return is_square() && rank() == rows_; }

  ExactMatrix inverse() const {
    if (!is_square()) throw invalid_parameter("inverse of a non-square matrix");
    ExactMatrix aug(rows_, 2 * cols_);
    aug.set_block(0, 0, *this);
    aug.set_block(0, cols_, identity(rows_));
    std::vector<std::size_t> pivots;
    aug.rref(&pivots);
    // Invertible exactly when every pivot lands in the left block.
    if (pivots.size() < rows_ || pivots[rows_ - 1] >= cols_)
      throw no_witness("matrix is singular");
    return aug.block(0, cols_, rows_, cols_);
  }

  /// Basis of the right nullspace, one matrix column per basis vector.
  ExactMatrix nullspace() const {
    ExactMatrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t rank = m.rref(&pivots);
    std::vector<std::size_t> free_cols;
    {
      std::size_t p = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (p < pivots.size() && pivots[p] == c) {
          ++p;
        } else {
          free_cols.push_back(c);
        }
      }
    }
    ExactMatrix basis(cols_, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      basis.at(free_cols[k], k) = GaussianRational(1);
      for (std::size_t r = 0; r < rank; ++r)
        basis.at(pivots[r], k) = -m.at(r, free_cols[k]);
    }
    return basis;
  }

  /// Column-major flattening, the convention used by the Kronecker
  /// linearization vec(AXB) = (B^T kron A) vec(X).
  ExactMatrix vec() const {
    ExactMatrix v(rows_ * cols_, 1);
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) v.at(j * rows_ + i, 0) = at(i, j);
    return v;
  }
  static ExactMatrix unvec(const ExactMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) throw invalid_parameter("bad vec shape");
    ExactMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = v.at(j * rows + i, 0);
    return m;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["rows"] = rows_;
    j["cols"] = cols_;
    auto entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t jj = 0; jj < cols_; ++jj) {
        const GaussianRational& v = at(i, jj);
        row.push_back(nlohmann::ordered_json{
            {"re", {v.re.get_num().get_str(), v.re.get_den().get_str()}},
            {"im", {v.im.get_num().get_str(), v.im.get_den().get_str()}}});
      }
      entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
  }

  static ExactMatrix from_json(const nlohmann::json& j) {
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows) throw parse_error("matrix row count mismatch");
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (entries[i].size() != cols) throw parse_error("matrix column count mismatch");
      for (std::size_t jj = 0; jj < cols; ++jj) {
        const auto& e = entries[i][jj];
        auto part = [&](const char* key) {
          const auto& p = e.at(key);
          Rat r(Int(p.at(0).get<std::string>()), Int(p.at(1).get<std::string>()));
          if (r.get_den() == 0) throw parse_error("zero denominator in matrix entry");
          r.canonicalize();
          return r;
        };
        m.at(i, jj) = GaussianRational(part("re"), part("im"));
      }
    }
    return m;
  }

 private:
  void check_same_shape(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw invalid_parameter("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<GaussianRational> data_;
};

}  // namespace stabilab
