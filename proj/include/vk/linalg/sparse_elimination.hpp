#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "vk/linalg/bigint.hpp"
#include "vk/linalg/int_matrix.hpp"

namespace vk::linalg {

struct IntegerRing {
  using T = BigInt;
  static T from(const BigInt& v) { return v; }
  static BigInt lift(const T& v) { return v; }
  static bool is_zero(const T& v) { return v == 0; }
  static bool is_unit(const T& v) { return v == 1 || v == -1; }
  static T unit_inverse(const T& u) { return u; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T add(const T& a, const T& b) { return a + b; }
  static T neg(const T& a) { return -a; }
};

struct Gf2Ring {
  using T = std::uint8_t;
  static T from(const BigInt& v) { return mpz_odd_p(v.get_mpz_t()) ? 1 : 0; }
  static BigInt lift(const T& v) { return BigInt(v); }
  static bool is_zero(const T& v) { return v == 0; }
  static bool is_unit(const T& v) { return v != 0; }
  static T unit_inverse(const T& u) { return u; }
  static T mul(const T& a, const T& b) { return a & b; }
  static T add(const T& a, const T& b) { return a ^ b; }
  static T neg(const T& a) { return a; }
};

/// Row-reduces a sparse matrix using only unit pivots, with Markowitz-style
/// pivot choice (shortest row first, then sparsest column). Every row
/// operation is logged so that right-hand sides can be transformed and
/// left-kernel certificates pulled back to the original row basis. Rows that
/// still hold entries after no unit pivot is left form the residual block.
template <class Ring>
class UnitPivotElimination {
 public:
  using T = typename Ring::T;
  using Row = std::vector<std::pair<std::uint32_t, T>>;

  struct Pivot {
    std::uint32_t row;
    std::uint32_t col;
    T value;
  };
  struct RowOp {  // row[dst] += factor * row[src]
    std::uint32_t dst;
    std::uint32_t src;
    T factor;
  };

  explicit UnitPivotElimination(const IntMatrix& m) : nrows_(m.rows()), ncols_(m.cols()) {
    rows_.assign(nrows_, Row{});
    col_rows_.assign(ncols_, {});
    for (std::size_t c = 0; c < ncols_; ++c)
      for (const auto& [r, v] : m.column(c)) {
        T x = Ring::from(v);
        if (Ring::is_zero(x)) continue;
        rows_[r].emplace_back(static_cast<std::uint32_t>(c), x);
        col_rows_[c].push_back(r);
      }
    active_.assign(nrows_, true);
    col_pivoted_.assign(ncols_, false);
    run();
  }

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  const std::vector<Pivot>& pivots() const { return pivots_; }
  const std::vector<RowOp>& ops() const { return ops_; }
  const Row& row(std::size_t r) const { return rows_[r]; }
  bool is_residual_row(std::size_t r) const { return active_[r]; }
  bool is_pivot_column(std::size_t c) const { return col_pivoted_[c]; }

  std::vector<std::uint32_t> residual_rows() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < nrows_; ++r)
      if (active_[r]) out.push_back(r);
    return out;
  }

  /// Applies the logged row operations to a right-hand side.
  std::vector<T> transform_rhs(std::vector<T> v) const {
    for (const auto& op : ops_) v[op.dst] = Ring::add(v[op.dst], Ring::mul(op.factor, v[op.src]));
    return v;
  }

  /// Given y on the transformed rows, returns y' with y'ᵀ·M = yᵀ·(E·M).
  std::vector<T> pull_back(std::vector<T> y) const {
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it)
      if (!Ring::is_zero(y[it->dst])) y[it->src] = Ring::add(y[it->src], Ring::mul(it->factor, y[it->dst]));
    return y;
  }

  /// Solves the pivot rows for the pivot columns given values on all
  /// non-pivot columns in x and the transformed rhs.
  void back_substitute(std::vector<T>& x, const std::vector<T>& rhs) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      T acc = rhs[it->row];
      for (const auto& [c, v] : rows_[it->row])
        if (c != it->col && !Ring::is_zero(x[c])) acc = Ring::add(acc, Ring::neg(Ring::mul(v, x[c])));
      x[it->col] = Ring::mul(Ring::unit_inverse(it->value), acc);
    }
  }

 private:
  void run() {
    using Key = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    for (std::uint32_t r = 0; r < nrows_; ++r)
      if (!rows_[r].empty()) heap.emplace(rows_[r].size(), r);

    while (!heap.empty()) {
      auto [len, r] = heap.top();
      heap.pop();
      if (!active_[r] || rows_[r].size() != len || len == 0) continue;

      // unit entry in the sparsest column
      std::size_t best = rows_[r].size();
      for (std::size_t i = 0; i < rows_[r].size(); ++i) {
        const auto& [c, v] = rows_[r][i];
        if (!Ring::is_unit(v)) continue;
        if (best == rows_[r].size() || col_rows_[c].size() < col_rows_[rows_[r][best].first].size()) best = i;
      }
      if (best == rows_[r].size()) continue;  // re-queued if the row changes later

      const std::uint32_t pc = rows_[r][best].first;
      const T pv = rows_[r][best].second;
      const T inv = Ring::unit_inverse(pv);
      active_[r] = false;
      col_pivoted_[pc] = true;
      pivots_.push_back({r, pc, pv});

      std::vector<std::uint32_t> targets;
      targets.swap(col_rows_[pc]);
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      for (std::uint32_t t : targets) {
        if (!active_[t]) continue;
        const T* a = find(rows_[t], pc);
        if (!a) continue;
        T factor = Ring::neg(Ring::mul(*a, inv));
        axpy(t, r, factor);
        ops_.push_back({t, r, factor});
        heap.emplace(rows_[t].size(), t);
      }
    }
  }

  static const T* find(const Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  // rows_[dst] += f * rows_[src]; active rows never hold pivoted columns
  void axpy(std::uint32_t dst, std::uint32_t src, const T& f) {
    const Row& a = rows_[dst];
    const Row& b = rows_[src];
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, Ring::mul(f, b[j].second));
        col_rows_[b[j].first].push_back(dst);
        ++j;
      } else {
        T s = Ring::add(a[i].second, Ring::mul(f, b[j].second));
        if (!Ring::is_zero(s)) out.emplace_back(a[i].first, s);
        ++i;
        ++j;
      }
    }
    rows_[dst] = std::move(out);
  }

  std::size_t nrows_, ncols_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<bool> active_;
  std::vector<bool> col_pivoted_;
  std::vector<Pivot> pivots_;
  std::vector<RowOp> ops_;
};

}  // namespace vk::linalg
