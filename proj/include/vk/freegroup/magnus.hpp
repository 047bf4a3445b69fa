#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/freegroup/parser.hpp"
#include "vk/freegroup/word.hpp"
#include "vk/linalg/bigint.hpp"

namespace vk::freegroup {

using linalg::BigInt;

/// Truncated noncommutative power series in t_0..t_{g-1} with integer
/// coefficients. Degree-d coefficients are stored densely, indexed by the
/// monomial read as a big-endian base-g number (so index order is lex order).
class MagnusSeries {
 public:
  MagnusSeries(int gens, int degree) : g_(gens), D_(degree), c_(static_cast<std::size_t>(degree) + 1) {
    if (gens < 1 || degree < 0) throw InputError("invalid Magnus series shape");
    std::size_t n = 1;
    for (int d = 0; d <= degree; ++d) {
      c_[d].assign(n, BigInt(0));
      n *= static_cast<std::size_t>(gens);
    }
  }

  static MagnusSeries one(int gens, int degree) {
    MagnusSeries s(gens, degree);
    s.c_[0][0] = 1;
    return s;
  }

  /// (1 + t_g)^e = Σ_j C(e, j) t_g^j, valid for negative e as well.
  static MagnusSeries generator_power(int gens, int degree, int g, const BigInt& e) {
    MagnusSeries s(gens, degree);
    BigInt binom = 1;
    std::size_t idx = 0;
    for (int j = 0; j <= degree; ++j) {
      s.c_[j][idx] = binom;
      binom = binom * (e - j) / (j + 1);  // exact: C(e, j+1)
      idx = idx * static_cast<std::size_t>(gens) + static_cast<std::size_t>(g);
    }
    return s;
  }

  int gens() const { return g_; }
  int degree() const { return D_; }

  const std::vector<BigInt>& coefficients(int d) const { return c_.at(static_cast<std::size_t>(d)); }
  const BigInt& coefficient(const std::vector<int>& monomial) const {
    return c_.at(monomial.size())[index(monomial)];
  }
  std::size_t index(const std::vector<int>& monomial) const {
    std::size_t idx = 0;
    for (int x : monomial) idx = idx * static_cast<std::size_t>(g_) + static_cast<std::size_t>(x);
    return idx;
  }
  std::vector<int> monomial(int d, std::size_t idx) const {
    std::vector<int> m(static_cast<std::size_t>(d));
    for (int i = d - 1; i >= 0; --i) {
      m[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(g_));
      idx /= static_cast<std::size_t>(g_);
    }
    return m;
  }

  bool degree_vanishes(int d) const {
    for (const auto& x : c_.at(static_cast<std::size_t>(d)))
      if (x != 0) return false;
    return true;
  }

  /// Lowest degree d >= 1 with a nonzero coefficient.
  std::optional<int> lowest_nonconstant_degree() const {
    for (int d = 1; d <= D_; ++d)
      if (!degree_vanishes(d)) return d;
    return std::nullopt;
  }

  friend MagnusSeries operator*(const MagnusSeries& a, const MagnusSeries& b) {
    a.check_shape(b);
    MagnusSeries out(a.g_, a.D_);
    std::vector<std::size_t> pw(static_cast<std::size_t>(a.D_) + 1, 1);
    for (int d = 1; d <= a.D_; ++d) pw[d] = pw[d - 1] * static_cast<std::size_t>(a.g_);
    for (int i = 0; i <= a.D_; ++i)
      for (std::size_t x = 0; x < a.c_[i].size(); ++x) {
        const BigInt& ax = a.c_[i][x];
        if (ax == 0) continue;
        for (int j = 0; i + j <= a.D_; ++j) {
          auto& dst = out.c_[i + j];
          const std::size_t base = x * pw[j];
          for (std::size_t y = 0; y < b.c_[j].size(); ++y)
            if (b.c_[j][y] != 0) dst[base + y] += ax * b.c_[j][y];
        }
      }
    return out;
  }

  MagnusSeries operator-(const MagnusSeries& b) const {
    check_shape(b);
    MagnusSeries out = *this;
    for (int d = 0; d <= D_; ++d)
      for (std::size_t i = 0; i < c_[d].size(); ++i) out.c_[d][i] -= b.c_[d][i];
    return out;
  }

  /// Inverse of a series with constant term 1: Σ (1 - s)^j truncated.
  MagnusSeries inverse() const {
    if (c_[0][0] != 1) throw InvariantViolation("Magnus inverse needs constant term 1");
    MagnusSeries x = one(g_, D_) - *this;  // s = 1 - x, s⁻¹ = Σ x^j
    MagnusSeries out = one(g_, D_), term = one(g_, D_);
    for (int j = 1; j <= D_; ++j) {
      term = term * x;
      out = out + term;
    }
    return out;
  }

  MagnusSeries scaled(const BigInt& f) const {
    MagnusSeries out = *this;
    for (auto& level : out.c_)
      for (auto& x : level) x *= f;
    return out;
  }

  MagnusSeries operator+(const MagnusSeries& b) const {
    check_shape(b);
    MagnusSeries out = *this;
    for (int d = 0; d <= D_; ++d)
      for (std::size_t i = 0; i < c_[d].size(); ++i) out.c_[d][i] += b.c_[d][i];
    return out;
  }

  friend bool operator==(const MagnusSeries& a, const MagnusSeries& b) {
    return a.g_ == b.g_ && a.D_ == b.D_ && a.c_ == b.c_;
  }

  /// Human-readable nonzero terms, e.g. "1 + t_a + t_a t_b - t_b t_a".
  std::string to_string() const {
    std::string s;
    for (int d = 0; d <= D_; ++d)
      for (std::size_t i = 0; i < c_[d].size(); ++i) {
        const BigInt& v = c_[d][i];
        if (v == 0) continue;
        std::string mono;
        for (int x : monomial(d, i)) mono += (mono.empty() ? "" : " ") + std::string("t_") + generator_letter(x);
        std::string coef = abs(v) == 1 && d > 0 ? "" : BigInt(abs(v)).get_str();
        std::string term = coef + (coef.empty() || mono.empty() ? "" : " ") + mono;
        if (s.empty())
          s = (v < 0 ? "-" : "") + term;
        else
          s += (v < 0 ? " - " : " + ") + term;
      }
    return s.empty() ? "0" : s;
  }

 private:
  void check_shape(const MagnusSeries& b) const {
    if (g_ != b.g_ || D_ != b.D_) throw InputError("Magnus series shapes differ");
  }

  int g_, D_;
  std::vector<std::vector<BigInt>> c_;
};

/// Group interface over truncated Magnus series, for evaluate().
struct MagnusOps {
  int gens, degree;
  MagnusSeries one() const { return MagnusSeries::one(gens, degree); }
  MagnusSeries gen(int g) const { return pow_gen(g, 1); }
  MagnusSeries mul(const MagnusSeries& a, const MagnusSeries& b) const { return a * b; }
  MagnusSeries inv(const MagnusSeries& a) const { return a.inverse(); }
  MagnusSeries pow_gen(int g, std::int64_t e) const {
    if (g >= gens) throw InputError("generator outside the Magnus series alphabet");
    return MagnusSeries::generator_power(gens, degree, g, linalg::big(e));
  }
};

inline MagnusSeries magnus(const FreeWord& w, int degree, int gens = 2) {
  gens = std::max(gens, w.generator_bound());
  MagnusOps ops{gens, degree};
  MagnusSeries s = ops.one();
  for (const auto& y : w.syllables()) s = s * ops.pow_gen(y.gen, y.exp);
  return s;
}

inline MagnusSeries magnus(const WordExpr& e, int degree, int gens = 2) {
  return evaluate(e, MagnusOps{std::max(gens, e.generator_bound()), degree});
}

/// w is trivial in F/γ_n (γ_1 = F, γ_{i+1} = [F, γ_i]) iff its Magnus
/// expansion has no terms in degrees 1..n-1.
inline bool trivial_in_gamma_quotient(const FreeWord& w, int n, int gens = 2) {
  if (n < 1) throw InputError("nilpotent quotient index must be >= 1");
  if (n == 1) return true;
  return !magnus(w, n - 1, gens).lowest_nonconstant_degree().has_value();
}

/// Largest n with w in γ_n, i.e. the lowest nonzero Magnus degree; absent
/// when every degree up to maxD vanishes.
inline std::optional<int> lcs_depth(const FreeWord& w, int maxD, int gens = 2) {
  if (maxD < 1) throw InputError("maxD must be >= 1");
  return magnus(w, maxD, gens).lowest_nonconstant_degree();
}

}  // namespace vk::freegroup
