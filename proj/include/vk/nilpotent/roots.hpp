#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vk/error.hpp"
#include "vk/freegroup/magnus.hpp"
#include "vk/freegroup/parser.hpp"
#include "vk/freegroup/word.hpp"
#include "vk/linalg/bigint.hpp"
#include "vk/nilpotent/lyndon.hpp"

namespace vk::nilpotent {

using freegroup::MagnusSeries;

/// s^e for s with constant term 1 via Σ C(e,j) (s-1)^j, exact for any integer e.
inline MagnusSeries detail_power(const MagnusSeries& s, const BigInt& e) {
  MagnusSeries x = s - MagnusSeries::one(s.gens(), s.degree());
  MagnusSeries out = MagnusSeries::one(s.gens(), s.degree()), term = out;
  BigInt binom = 1;
  for (int j = 1; j <= s.degree(); ++j) {
    binom = binom * (e - (j - 1)) / j;
    term = term * x;
    if (binom != 0) out = out + term.scaled(binom);
  }
  return out;
}

/// One factor c^e of a root written as a power product of basic commutators.
struct RootFactor {
  std::string bracket;  // "a", "[a,b]", "[[a,b],b]", ...
  FreeWord element;
  BigInt exponent;
};

struct LevelRecord {
  int degree;
  std::vector<std::string> basis;  // bracket labels, in Lyndon order
  std::vector<BigInt> discrepancy; // coordinates of the degree-d part of w^{-k}·x
  std::vector<BigInt> correction;  // discrepancy / k
};

/// w with w^k ≡ x modulo γ_{n+1}, as a power product in parser syntax.
struct RootCertificate {
  FreeWord x;
  std::int64_t k = 0;
  int n = 0;
  int gens = 2;
  std::vector<RootFactor> factors;
  std::vector<LevelRecord> levels;

  /// The root as a reduced word. Correction exponents grow quickly with n, so
  /// this is only sensible for small cases; prefer root_magnus().
  FreeWord root() const {
    FreeWord w;
    for (const auto& f : factors) w *= f.element.pow(linalg::to_int64(f.exponent));
    return w;
  }

  MagnusSeries root_magnus(int degree) const {
    MagnusSeries m = MagnusSeries::one(gens, degree);
    for (const auto& f : factors) m = m * detail_power(freegroup::magnus(f.element, degree, gens), f.exponent);
    return m;
  }

  /// e.g. "a b^3 [a,b]^-1 [[a,b],b]^2"; "1" for the trivial root.
  std::string root_expression() const {
    std::string s;
    for (const auto& f : factors) {
      if (f.exponent == 0) continue;
      if (!s.empty()) s += ' ';
      s += f.bracket;
      if (f.exponent != 1) s += "^" + f.exponent.get_str();
    }
    return s.empty() ? "1" : s;
  }
};

/// Degree-d discrepancy coordinates were not all divisible by k: x has no
/// k-th root in F/γ_{d+1}, hence none in any deeper quotient.
struct FailureAtLevel {
  int degree;
  std::vector<std::string> basis;
  std::vector<BigInt> coordinates;
  std::int64_t k;
  std::vector<LevelRecord> levels;  // the levels that did lift
};

using RootResult = std::variant<RootCertificate, FailureAtLevel>;

namespace detail {

inline MagnusSeries power(MagnusSeries s, std::int64_t k) {
  MagnusSeries out = MagnusSeries::one(s.gens(), s.degree());
  while (k) {
    if (k & 1) out = out * s;
    k >>= 1;
    if (k) s = s * s;
  }
  return out;
}

}  // namespace detail

/// Re-verifies a root independently of the solver: the root expression is
/// parsed and expanded homomorphically, and M(w)^k·M(x)^{-1} must have no
/// terms in degrees 1..n.
inline bool verify_root(const std::string& root_expression, const FreeWord& x, std::int64_t k, int n, int gens = 2) {
  if (k < 1 || n < 1) return false;
  auto expr = freegroup::parse_expr(root_expression);
  gens = std::max({gens, x.generator_bound(), expr.generator_bound()});
  MagnusSeries w = freegroup::magnus(expr, n, gens);
  MagnusSeries d = detail::power(w, k) * freegroup::magnus(x.inverse(), n, gens);
  return !d.lowest_nonconstant_degree().has_value();
}

/// Level-by-level lifting of a k-th root of x in F_g/γ_{n+1}. Roots in free
/// nilpotent groups are unique, so the first non-divisible level is a genuine
/// obstruction and no backtracking is needed. `reverse_factors` multiplies the
/// corrections of each level in the opposite order (same result mod γ_{n+1}).
inline RootResult kth_root_mod_gamma(const FreeWord& x, std::int64_t k, int n, int gens = 2,
                                     bool reverse_factors = false) {
  if (k < 2) throw InputError("root extraction needs k >= 2");
  if (n < 1) throw InputError("nilpotency class must be >= 1");
  gens = std::max(gens, x.generator_bound());

  RootCertificate cert;
  cert.x = x;
  cert.k = k;
  cert.n = n;
  cert.gens = gens;

  {
    LevelRecord lvl{1, {}, {}, {}};
    bool ok = true;
    for (int g = 0; g < gens; ++g) {
      BigInt e = linalg::big(x.exponent_sum(g));
      lvl.basis.emplace_back(1, freegroup::generator_letter(g));
      lvl.discrepancy.push_back(e);
      ok = ok && linalg::divides(linalg::big(k), e);
    }
    if (!ok) return FailureAtLevel{1, lvl.basis, lvl.discrepancy, k, {}};
    for (int g = 0; g < gens; ++g) {
      BigInt c = lvl.discrepancy[static_cast<std::size_t>(g)] / k;
      lvl.correction.push_back(c);
      if (c != 0) cert.factors.push_back({lvl.basis[static_cast<std::size_t>(g)], FreeWord::generator(g), c});
    }
    cert.levels.push_back(std::move(lvl));
  }

  for (int d = 2; d <= n; ++d) {
    MagnusSeries delta = detail_power(cert.root_magnus(d), linalg::big(-k)) * freegroup::magnus(x, d, gens);
    for (int e = 1; e < d; ++e)
      if (!delta.degree_vanishes(e)) throw InvariantViolation("root discrepancy is not in the expected lower central term");
    LyndonBasisLevel basis = lyndon_words(gens, d);
    LevelRecord lvl{d, {}, lie_decompose(basis, delta.coefficients(d)), {}};
    for (const auto& el : basis.elements) lvl.basis.push_back(el.bracket);

    bool ok = true;
    for (const auto& c : lvl.discrepancy) ok = ok && linalg::divides(linalg::big(k), c);
    if (!ok) return FailureAtLevel{d, lvl.basis, lvl.discrepancy, k, cert.levels};

    std::vector<RootFactor> add;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
      BigInt c = lvl.discrepancy[i] / k;
      lvl.correction.push_back(c);
      if (c != 0) add.push_back({basis.elements[i].bracket, basis.elements[i].commutator, c});
    }
    if (reverse_factors) std::reverse(add.begin(), add.end());
    for (auto& f : add) cert.factors.push_back(std::move(f));
    cert.levels.push_back(std::move(lvl));
  }

  if (!verify_root(cert.root_expression(), x, k, n, gens))
    throw InvariantViolation("constructed root failed independent Magnus verification");
  return cert;
}

/// a^p b^{p^{2^{n-1}}} in parser syntax.
inline std::string proposition42_expression(std::int64_t p, int n) {
  BigInt b = 1;
  BigInt pp = linalg::big(p);
  std::uint64_t ex = std::uint64_t{1} << (n - 1);
  mpz_pow_ui(b.get_mpz_t(), pp.get_mpz_t(), ex);
  return "a^" + std::to_string(p) + " b^" + b.get_str();
}

/// The root certificate for a^p b^{p^{2^{n-1}}} in F_2/γ_{n+1}. Such a root
/// always exists, so a failure is reported as an InvariantViolation.
inline RootCertificate proposition42_witness(std::int64_t p, int n) {
  if (p < 2 || n < 1) throw InputError("prop42 needs p >= 2 and n >= 1");
  if (n > 6) throw InputError("prop42 supports n <= 6");
  FreeWord x = freegroup::parse_word(proposition42_expression(p, n));
  RootResult r = kth_root_mod_gamma(x, p, n);
  if (auto* f = std::get_if<FailureAtLevel>(&r))
    throw InvariantViolation("no p-th root of a^p b^(p^(2^(n-1))) at level " + std::to_string(f->degree));
  return std::get<RootCertificate>(r);
}

/// The boundary word f_n(α)^k·f_n(β) = w^k·a^k b^{k^{2^{n-1}}} with w the
/// inverse of the k-th root of a^k b^{k^{2^{n-1}}} modulo γ_{n+1}.
struct BoundaryWord {
  std::int64_t k;
  int n;
  RootCertificate root;             // root r of a^k b^(...); the α image is r⁻¹
  std::string alpha_expression;
  std::string boundary_expression;
  std::optional<FreeWord> alpha_word;  // only when the reduced word is short
  bool trivial_mod_gamma_n1;        // in F/γ_{n+1}
  bool trivial_mod_gamma_n2;        // in F/γ_{n+2}, reported only
};

inline BoundaryWord immersion_boundary_word(std::int64_t k, int n) {
  if (k < 3 || k % 2 == 0) throw InputError("immersion boundary word needs odd k >= 3");
  RootCertificate r = proposition42_witness(k, n);
  BoundaryWord out{k, n, r, "(" + r.root_expression() + ")^-1", "", std::nullopt, false, false};
  out.boundary_expression = "(" + out.alpha_expression + ")^" + std::to_string(k) + " " + proposition42_expression(k, n);
  auto expr = freegroup::parse_expr(out.boundary_expression);
  auto depth = freegroup::magnus(expr, n + 1, 2).lowest_nonconstant_degree();
  out.trivial_mod_gamma_n1 = !depth || *depth > n;
  out.trivial_mod_gamma_n2 = !depth;
  if (!out.trivial_mod_gamma_n1) throw InvariantViolation("boundary word is not trivial in F/γ_{n+1}");
  BigInt letters = 0;
  for (const auto& f : r.factors) letters += abs(f.exponent) * static_cast<long>(f.element.length());
  if (letters <= 100000) out.alpha_word = r.root().inverse();
  return out;
}

/// Smallest class n ≤ maxN at which a^r b^s has no k-th root in F_2/γ_{n+1}.
struct ObstructionDepth {
  std::optional<int> level;                 // absent: no failure up to maxN
  std::optional<FailureAtLevel> failure;
  std::optional<RootCertificate> root;      // present when no failure was found
};

inline ObstructionDepth obstruction_depth(std::int64_t r, std::int64_t s, std::int64_t k, int maxN) {
  if (r == 0 || s == 0) throw InputError("r and s must be nonzero");
  if (maxN < 1) throw InputError("maxN must be >= 1");
  FreeWord x = FreeWord::generator(0, r) * FreeWord::generator(1, s);
  // the lifting at level d does not depend on the target class, so one run suffices
  RootResult res = kth_root_mod_gamma(x, k, maxN);
  ObstructionDepth out;
  if (auto* f = std::get_if<FailureAtLevel>(&res)) {
    out.level = f->degree;
    out.failure = *f;
  } else {
    out.root = std::get<RootCertificate>(res);
  }
  return out;
}

}  // namespace vk::nilpotent
