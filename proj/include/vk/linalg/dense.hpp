#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vk/error.hpp"
#include "vk/linalg/bigint.hpp"

namespace vk::linalg {

/// Row-major dense matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntDense = Matrix<BigInt>;
using RatDense = Matrix<BigRat>;

/// 4x4 determinant by Laplace expansion along the first two rows
/// (complementary 2x2 minors). Works for any commutative ring scalar.
template <class T>
T det4(const std::array<std::array<T, 4>, 4>& m) {
  auto minor_top = [&](int a, int b) { return T(m[0][a] * m[1][b] - m[0][b] * m[1][a]); };
  auto minor_bot = [&](int a, int b) { return T(m[2][a] * m[3][b] - m[2][b] * m[3][a]); };
  // pairs (a,b) with complement (c,d) and sign of the permutation (a b c d)
  T d = minor_top(0, 1) * minor_bot(2, 3);
  d -= minor_top(0, 2) * minor_bot(1, 3);
  d += minor_top(0, 3) * minor_bot(1, 2);
  d += minor_top(1, 2) * minor_bot(0, 3);
  d -= minor_top(1, 3) * minor_bot(0, 2);
  d += minor_top(2, 3) * minor_bot(0, 1);
  return d;
}

inline BigRat det4(const RatDense& m) {
  if (m.rows() != 4 || m.cols() != 4) throw InputError("det4 expects a 4x4 matrix");
  std::array<std::array<BigRat, 4>, 4> a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = m(i, j);
  return det4(a);
}

/// Exact determinant of a square rational matrix by Gaussian elimination.
inline BigRat determinant(RatDense m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  BigRat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return BigRat(0);
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      BigRat f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

inline BigInt determinant(const IntDense& m) {
  RatDense q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = BigRat(m(i, j));
  BigRat d = determinant(std::move(q));
  return d.get_num();
}

/// Unique solution of a square system, or nullopt when A is singular.
inline std::optional<std::vector<BigRat>> solve_linear_rational(RatDense a, std::vector<BigRat> b) {
  if (a.rows() != a.cols()) throw InputError("solve_linear_rational needs a square matrix");
  if (b.size() != a.rows()) throw InputError("right-hand side length mismatch");
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(p, c);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      BigRat f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<BigRat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
  return x;
}

}  // namespace vk::linalg
