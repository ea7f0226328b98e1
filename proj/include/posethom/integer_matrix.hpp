#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace posethom {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers. Zero-row and
/// zero-column shapes are valid.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ContractError("ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Sparse construction from (row, col, value) triplets; duplicates add.
  struct Triplet {
    std::size_t row, col;
    Integer value;
  };
  static IntMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& ts) {
    IntMatrix m(rows, cols);
    for (const auto& t : ts) {
      if (t.row >= rows || t.col >= cols) throw ContractError("triplet out of range");
      m(t.row, t.col) += t.value;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  IntVector column(std::size_t j) const {
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r1) as a new matrix.
  IntMatrix row_block(std::size_t r0, std::size_t r1) const {
    IntMatrix out(r1 - r0, cols_);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i - r0, j) = (*this)(i, j);
    return out;
  }

  /// Columns [c0, c1) as a new matrix.
  IntMatrix col_block(std::size_t c0, std::size_t c1) const {
    IntMatrix out(rows_, c1 - c0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = c0; j < c1; ++j) out(i, j - c0) = (*this)(i, j);
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw ContractError("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols_ != x.size()) throw ContractError("matrix-vector shape mismatch");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && x[k] != 0) y[i] += a(i, k) * x[k];
    return y;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + (*this)(i, j).get_str();
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

/// Finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k with
/// t_1 | t_2 | ... and every t_i >= 2. Field-mode results use free_rank
/// only.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }

  /// Group with the given free rank and invariant factors; factors equal
  /// to 1 are dropped.
  static AbelianGroup from_invariant_factors(std::size_t free_rank, const std::vector<Integer>& factors) {
    AbelianGroup g;
    g.free_rank = free_rank;
    for (const auto& d : factors)
      if (abs(d) > 1) g.torsion.push_back(abs(d));
    return g;
  }

  /// "0", "Z", "Z^2 + Z/2".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
    return s;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

}  // namespace posethom
