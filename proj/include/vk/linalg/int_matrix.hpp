#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vk/error.hpp"
#include "vk/linalg/bigint.hpp"
#include "vk/linalg/dense.hpp"

namespace vk::linalg {

/// Sparse integer matrix stored column-wise. Zero entries are never stored.
class IntMatrix {
 public:
  using Entry = std::pair<std::uint32_t, BigInt>;
  using Column = std::vector<Entry>;  // sorted by row

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Append a column given as (row, value) pairs in any order; duplicates are summed.
  void push_column(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Column col;
    for (auto& [r, v] : entries) {
      if (r >= rows_) throw InputError("row index out of range");
      if (!col.empty() && col.back().first == r)
        col.back().second += v;
      else
        col.emplace_back(r, std::move(v));
      if (col.back().second == 0) col.pop_back();
    }
    columns_.push_back(std::move(col));
    ++cols_;
  }

  void set(std::size_t r, std::size_t c, const BigInt& v) {
    check(r, c);
    Column& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
      if (v == 0)
        col.erase(it);
      else
        it->second = v;
    } else if (v != 0) {
      col.insert(it, Entry(static_cast<std::uint32_t>(r), v));
    }
  }

  BigInt get(std::size_t r, std::size_t c) const {
    check(r, c);
    const Column& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    return (it != col.end() && it->first == r) ? it->second : BigInt(0);
  }

  const Column& column(std::size_t c) const {
    if (c >= cols_) throw InputError("column index out of range");
    return columns_[c];
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  std::vector<BigInt> multiply(const std::vector<BigInt>& x) const {
    if (x.size() != cols()) throw InputError("vector length does not match column count");
    std::vector<BigInt> out(rows_, BigInt(0));
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (x[c] == 0) continue;
      for (const auto& [r, v] : columns_[c]) out[r] += v * x[c];
    }
    return out;
  }

  /// yᵀ·M as a row vector.
  std::vector<BigInt> left_multiply(const std::vector<BigInt>& y) const {
    if (y.size() != rows_) throw InputError("vector length does not match row count");
    std::vector<BigInt> out(cols_, BigInt(0));
    for (std::size_t c = 0; c < columns_.size(); ++c)
      for (const auto& [r, v] : columns_[c])
        if (y[r] != 0) out[c] += v * y[r];
    return out;
  }

  IntDense to_dense() const {
    IntDense d(rows_, cols());
    for (std::size_t c = 0; c < columns_.size(); ++c)
      for (const auto& [r, v] : columns_[c]) d(r, c) = v;
    return d;
  }

  static IntMatrix from_dense(const IntDense& d) {
    IntMatrix m(d.rows(), d.cols());
    for (std::size_t c = 0; c < d.cols(); ++c)
      for (std::size_t r = 0; r < d.rows(); ++r)
        if (d(r, c) != 0) m.columns_[c].emplace_back(static_cast<std::uint32_t>(r), d(r, c));
    return m;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a.column(c) != b.column(c)) return false;
    return true;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols()) throw InputError("matrix index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> columns_;
};

}  // namespace vk::linalg
