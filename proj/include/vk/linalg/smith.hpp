#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vk/linalg/bigint.hpp"
#include "vk/linalg/dense.hpp"
#include "vk/linalg/int_matrix.hpp"

namespace vk::linalg {

/// U·M·V = D with U, V unimodular and D diagonal with d1 | d2 | ... (all d_i >= 0).
struct SmithForm {
  IntDense U;
  IntDense D;
  IntDense V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < D.rows() && r < D.cols() && D(r, r) != 0) ++r;
    return r;
  }
  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

// Row/column operations that keep U·M·V = D in sync.
struct SmithWork {
  IntDense& A;
  IntDense& U;
  IntDense& V;

  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {  // row dst += f*row src
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(src, j) != 0) A(dst, j) += f * A(src, j);
    for (std::size_t j = 0; j < U.cols(); ++j)
      if (U(src, j) != 0) U(dst, j) += f * U(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {  // col dst += f*col src
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (A(i, src) != 0) A(i, dst) += f * A(i, src);
    for (std::size_t i = 0; i < V.rows(); ++i)
      if (V(i, src) != 0) V(i, dst) += f * V(i, src);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) = -A(r, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
  }
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntDense& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm out{IntDense::identity(m), M, IntDense::identity(n)};
  detail::SmithWork w{out.D, out.U, out.V};
  IntDense& A = out.D;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // smallest nonzero |entry| in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (!best || abs(A(i, j)) < abs(A(best->first, best->second))))
            best = std::make_pair(i, j);
      if (!best) return out;
      w.swap_rows(t, best->first);
      w.swap_cols(t, best->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        BigInt q = floor_div(A(i, t), A(t, t));
        w.add_row(i, t, -q);
        if (A(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        BigInt q = floor_div(A(t, j), A(t, t));
        w.add_col(j, t, -q);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // divisibility of the remaining block by the pivot
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(A(t, t), A(i, j))) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        w.add_row(t, *bad_row, BigInt(1));
        continue;
      }
      if (A(t, t) < 0) w.negate_row(t);
      break;
    }
  }
  return out;
}

inline SmithForm smith_normal_form(const IntMatrix& M) { return smith_normal_form(M.to_dense()); }

}  // namespace vk::linalg
