#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vk/error.hpp"
#include "vk/linalg/bigint.hpp"
#include "vk/linalg/int_matrix.hpp"
#include "vk/linalg/smith.hpp"
#include "vk/linalg/sparse_elimination.hpp"

namespace vk::linalg {

/// Proof that v is not in the column lattice of M: an integer row vector y
/// with yᵀM ≡ 0 and yᵀv ≢ 0 modulo `modulus` (modulus 0 means exact equality).
struct NonMembershipCertificate {
  std::vector<BigInt> y;
  BigInt modulus;
};

struct MembershipResult {
  bool member = false;
  std::optional<std::vector<BigInt>> solution;
  std::optional<NonMembershipCertificate> certificate;
};

inline bool congruent_zero(const BigInt& a, const BigInt& modulus) { return divides(modulus, a); }

/// Re-checks a certificate against the original data.
inline bool check_certificate(const IntMatrix& M, const std::vector<BigInt>& v,
                              const NonMembershipCertificate& cert) {
  if (cert.y.size() != M.rows() || v.size() != M.rows() || cert.modulus < 0 || cert.modulus == 1) return false;
  for (const auto& e : M.left_multiply(cert.y))
    if (!congruent_zero(e, cert.modulus)) return false;
  BigInt dot = 0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += cert.y[i] * v[i];
  return !congruent_zero(dot, cert.modulus);
}

inline bool check_solution(const IntMatrix& M, const std::vector<BigInt>& v, const std::vector<BigInt>& x) {
  return x.size() == M.cols() && v.size() == M.rows() && M.multiply(x) == v;
}

/// The column lattice of an integer matrix, factored once so many right-hand
/// sides can be tested: unit-pivot sparse elimination followed by a Smith
/// form of whatever residual block has no unit entries.
class ColumnLattice {
 public:
  explicit ColumnLattice(const IntMatrix& M) : M_(M), elim_(M) {
    residual_rows_ = elim_.residual_rows();
    std::vector<bool> seen(M.cols(), false);
    for (auto r : residual_rows_)
      for (const auto& [c, v] : elim_.row(r))
        if (!seen[c]) {
          seen[c] = true;
          residual_cols_.push_back(c);
        }
    std::sort(residual_cols_.begin(), residual_cols_.end());
    std::vector<std::size_t> col_pos(M.cols(), 0);
    for (std::size_t j = 0; j < residual_cols_.size(); ++j) col_pos[residual_cols_[j]] = j;

    IntDense R(residual_rows_.size(), residual_cols_.size());
    for (std::size_t i = 0; i < residual_rows_.size(); ++i)
      for (const auto& [c, v] : elim_.row(residual_rows_[i])) R(i, col_pos[c]) = v;
    snf_ = smith_normal_form(R);
  }

  const IntMatrix& matrix() const { return M_; }

  std::size_t rank() const { return elim_.pivots().size() + snf_.rank(); }

  /// Nonzero invariant factors of M (pivots contribute ones).
  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out(elim_.pivots().size(), BigInt(1));
    for (auto& d : snf_.invariant_factors()) out.push_back(d);
    return out;
  }

  std::size_t residual_size() const { return residual_rows_.size() * residual_cols_.size(); }

  MembershipResult solve(const std::vector<BigInt>& v) const {
    if (v.size() != M_.rows()) throw InputError("right-hand side length does not match row count");
    std::vector<BigInt> w = elim_.transform_rhs(v);
    const std::size_t m = residual_rows_.size();
    std::vector<BigInt> z(m, BigInt(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (snf_.U(i, k) != 0) z[i] += snf_.U(i, k) * w[residual_rows_[k]];

    const std::size_t rk = snf_.rank();
    for (std::size_t i = 0; i < m; ++i) {
      BigInt d = i < rk ? snf_.D(i, i) : BigInt(0);
      if (divides(d, z[i])) continue;
      std::vector<BigInt> y(M_.rows(), BigInt(0));
      for (std::size_t k = 0; k < m; ++k) y[residual_rows_[k]] = snf_.U(i, k);
      MembershipResult out;
      out.certificate = NonMembershipCertificate{elim_.pull_back(std::move(y)), d};
      return out;
    }

    std::vector<BigInt> x(M_.cols(), BigInt(0));
    const std::size_t n = residual_cols_.size();
    for (std::size_t j = 0; j < n; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < rk; ++i)
        if (snf_.V(j, i) != 0) s += snf_.V(j, i) * (z[i] / snf_.D(i, i));
      x[residual_cols_[j]] = s;
    }
    elim_.back_substitute(x, w);
    if (!check_solution(M_, v, x)) throw InvariantViolation("lattice solution failed exact re-multiplication");
    MembershipResult out;
    out.member = true;
    out.solution = std::move(x);
    return out;
  }

 private:
  IntMatrix M_;
  UnitPivotElimination<IntegerRing> elim_;
  std::vector<std::uint32_t> residual_rows_;
  std::vector<std::uint32_t> residual_cols_;
  SmithForm snf_;
};

/// Column space of M over 𝔽₂.
class ColumnSpaceGf2 {
 public:
  explicit ColumnSpaceGf2(const IntMatrix& M) : M_(M), elim_(M) {}

  std::size_t rank() const { return elim_.pivots().size(); }

  /// Solution over 𝔽₂ (entries 0/1), or a certificate with modulus 2.
  MembershipResult solve(const std::vector<BigInt>& v) const {
    if (v.size() != M_.rows()) throw InputError("right-hand side length does not match row count");
    std::vector<std::uint8_t> b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = Gf2Ring::from(v[i]);
    auto w = elim_.transform_rhs(b);
    for (auto r : elim_.residual_rows()) {
      if (w[r] == 0) continue;
      std::vector<std::uint8_t> y(M_.rows(), 0);
      y[r] = 1;
      y = elim_.pull_back(std::move(y));
      MembershipResult out;
      out.certificate = NonMembershipCertificate{lift(y), BigInt(2)};
      return out;
    }
    std::vector<std::uint8_t> x(M_.cols(), 0);
    elim_.back_substitute(x, w);
    MembershipResult out;
    out.member = true;
    out.solution = lift(x);
    return out;
  }

 private:
  static std::vector<BigInt> lift(const std::vector<std::uint8_t>& a) {
    std::vector<BigInt> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    return out;
  }

  IntMatrix M_;
  UnitPivotElimination<Gf2Ring> elim_;
};

inline std::optional<std::vector<BigInt>> integer_membership(const IntMatrix& M, const std::vector<BigInt>& v) {
  return ColumnLattice(M).solve(v).solution;
}

inline std::optional<std::vector<std::uint8_t>> mod2_membership(const IntMatrix& M, const std::vector<BigInt>& v) {
  auto sol = ColumnSpaceGf2(M).solve(v).solution;
  if (!sol) return std::nullopt;
  std::vector<std::uint8_t> out(sol->size());
  for (std::size_t i = 0; i < sol->size(); ++i) out[i] = (*sol)[i] == 0 ? 0 : 1;
  return out;
}

}  // namespace vk::linalg
