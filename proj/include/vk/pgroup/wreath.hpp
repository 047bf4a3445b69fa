#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/freegroup/word.hpp"

namespace vk::pgroup {

struct WreathElement {
  std::vector<std::uint32_t> vec;  // entries mod p
  std::uint64_t shift = 0;         // mod p^(j+1)
  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// (ℤ/p)^(p^j) ⋊ ℤ/p^(j+1), the shift k acting by rotating coordinates k
/// places: (σ^k u)_i = u_{i-k mod p^j}.
class WreathGroup {
 public:
  WreathGroup(std::uint32_t p, std::uint32_t j) : p_(p), j_(j) {
    if (!is_prime(p)) throw InputError("p must be prime");
    dim_ = 1;
    for (std::uint32_t t = 0; t < j; ++t) {
      dim_ *= p;
      if (dim_ > 4096) throw InputError("p^j too large");
    }
    modulus_ = static_cast<std::uint64_t>(dim_) * p;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t j() const { return j_; }
  std::uint32_t dimension() const { return dim_; }         // p^j
  std::uint64_t shift_modulus() const { return modulus_; }  // p^(j+1)

  /// log_p of the order, p^j + j + 1.
  std::uint64_t order_exponent() const { return dim_ + j_ + 1; }

  /// Group order, or nullopt when it exceeds 2^63.
  std::optional<std::uint64_t> order() const {
    std::uint64_t n = 1;
    for (std::uint64_t e = 0; e < order_exponent(); ++e) {
      if (n > (std::uint64_t{1} << 62) / p_) return std::nullopt;
      n *= p_;
    }
    return n;
  }

  WreathElement identity() const { return {std::vector<std::uint32_t>(dim_, 0), 0}; }

  WreathElement make(std::vector<std::int64_t> vec, std::int64_t shift) const {
    if (vec.size() != dim_) throw InputError("vector length must be p^j");
    WreathElement e{std::vector<std::uint32_t>(dim_), reduce(shift, modulus_)};
    for (std::uint32_t i = 0; i < dim_; ++i) e.vec[i] = static_cast<std::uint32_t>(reduce(vec[i], p_));
    return e;
  }

  void check(const WreathElement& g) const {
    if (g.vec.size() != dim_) throw InputError("element does not belong to this group");
  }

  WreathElement multiply(const WreathElement& g, const WreathElement& h) const {
    check(g);
    check(h);
    WreathElement out{g.vec, (g.shift + h.shift) % modulus_};
    const std::uint32_t rot = static_cast<std::uint32_t>(g.shift % dim_);
    for (std::uint32_t i = 0; i < dim_; ++i) {
      std::uint32_t src = (i + dim_ - rot) % dim_;
      out.vec[i] = (out.vec[i] + h.vec[src]) % p_;
    }
    return out;
  }

  WreathElement inverse(const WreathElement& g) const {
    check(g);
    // (v,k)^-1 = (-σ^{-k} v, -k)
    WreathElement out{std::vector<std::uint32_t>(dim_), (modulus_ - g.shift) % modulus_};
    const std::uint32_t rot = static_cast<std::uint32_t>(g.shift % dim_);
    for (std::uint32_t i = 0; i < dim_; ++i) {
      std::uint32_t src = (i + rot) % dim_;
      out.vec[i] = (p_ - g.vec[src]) % p_;
    }
    return out;
  }

  WreathElement power(WreathElement g, std::int64_t m) const {
    if (m < 0) {
      g = inverse(g);
      m = -m;
    }
    WreathElement acc = identity();
    while (m) {
      if (m & 1) acc = multiply(acc, g);
      m >>= 1;
      if (m) g = multiply(g, g);
    }
    return acc;
  }

  WreathElement commutator(const WreathElement& g, const WreathElement& h) const {
    return multiply(multiply(g, h), multiply(inverse(g), inverse(h)));
  }

  /// Homomorphic image of w under generator g ↦ images[g].
  WreathElement eval_word(const freegroup::FreeWord& w, const std::vector<WreathElement>& images) const {
    WreathElement acc = identity();
    for (const auto& s : w.syllables()) {
      if (s.gen >= static_cast<int>(images.size())) throw InputError("no image for generator " + std::string(1, freegroup::generator_letter(s.gen)));
      acc = multiply(acc, power(images[static_cast<std::size_t>(s.gen)], s.exp));
    }
    return acc;
  }

  /// Element number `rank` in lexicographic (vec, shift) order.
  WreathElement element(std::uint64_t rank) const {
    WreathElement e{std::vector<std::uint32_t>(dim_), rank % modulus_};
    rank /= modulus_;
    for (std::uint32_t i = dim_; i-- > 0;) {
      e.vec[i] = static_cast<std::uint32_t>(rank % p_);
      rank /= p_;
    }
    return e;
  }

  std::string to_string(const WreathElement& g) const {
    std::string s = "((";
    for (std::uint32_t i = 0; i < dim_; ++i) s += (i ? "," : "") + std::to_string(g.vec[i]);
    return s + ")," + std::to_string(g.shift) + ")";
  }

 private:
  static std::uint64_t reduce(std::int64_t x, std::uint64_t m) {
    std::int64_t r = x % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
  }

  std::uint32_t p_, j_, dim_;
  std::uint64_t modulus_;
};

struct PowerSearch {
  std::optional<WreathElement> root;
  std::uint64_t visited = 0;  // elements tested
};

/// Tests h^p = g for every h in lexicographic order; stops at the first root.
inline PowerSearch is_pth_power_exhaustive(const WreathGroup& G, const WreathElement& g,
                                           std::uint64_t budget = 10'000'000) {
  auto order = G.order();
  if (!order || *order > budget) throw BudgetExceeded("group order exceeds the enumeration budget");
  PowerSearch out;
  for (std::uint64_t r = 0; r < *order; ++r) {
    ++out.visited;
    WreathElement h = G.element(r);
    if (G.power(h, G.p()) == g) {
      out.root = std::move(h);
      break;
    }
  }
  return out;
}

struct Theta {
  std::int64_t p, r, s;
  std::int64_t i, j, m, n;  // r = p^i m, s = p^j n after the optional swap
  bool swapped;             // a and b exchanged so that i <= j
  WreathGroup group;
  WreathElement image_a, image_b;  // images of the original generators a, b
};

/// The homomorphism F_2 → (ℤ/p)^(p^j) ⋊ ℤ/p^(j+1) under which a^r b^s is not a
/// p-th power. When p divides r more often than s the roles of a and b are exchanged.
inline Theta theta(std::int64_t p, std::int64_t r, std::int64_t s) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (r == 0 || s == 0) throw InputError("r and s must be nonzero");
  auto split = [p](std::int64_t x, std::int64_t& e, std::int64_t& unit) {
    e = 0;
    unit = x;
    while (unit % p == 0) {
      unit /= p;
      ++e;
    }
  };
  std::int64_t i, m, j, n;
  split(r, i, m);
  split(s, j, n);
  const bool swapped = i > j;
  if (swapped) {
    std::swap(i, j);
    std::swap(m, n);
  }
  WreathGroup G(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(j));
  std::int64_t pji = 1;
  for (std::int64_t t = 0; t < j - i; ++t) pji *= p;
  std::vector<std::int64_t> e0(G.dimension(), 0);
  e0[0] = 1;
  WreathElement first = G.make(e0, -pji * n);
  WreathElement second = G.make(std::vector<std::int64_t>(G.dimension(), 0), m);
  // with the roles swapped the word is b^s a^r; the generator raised to the less divisible power gets `first`
  return swapped ? Theta{p, r, s, i, j, m, n, true, G, second, first} : Theta{p, r, s, i, j, m, n, false, G, first, second};
}

struct BaumslagCertificate {
  std::int64_t r, s, k, p;
  std::int64_t i, j, m, n;
  bool swapped;
  std::uint64_t order_exponent;  // |G| = p^order_exponent
  std::uint64_t order;
  WreathElement image_a, image_b, target;  // target = θ(a^r b^s)
  std::uint64_t enumerated;                // elements whose p-th power was checked
  std::string group_label;                 // e.g. "(Z/3)^3 x| Z/9"
};

inline std::vector<std::int64_t> prime_divisors(std::int64_t k) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= k; ++d)
    if (k % d == 0) {
      out.push_back(d);
      while (k % d == 0) k /= d;
    }
  if (k > 1) out.push_back(k);
  return out;
}

/// Exhaustively certifies that θ(a^r b^s) has no p-th root for a prime p | k,
/// hence a^r b^s is not a k-th power in F_2. Tries prime divisors in
/// increasing order and uses the first whose group fits the budget.
inline BaumslagCertificate certify_not_kth_power(std::int64_t r, std::int64_t s, std::int64_t k,
                                                 std::uint64_t budget = 10'000'000) {
  if (r == 0 || s == 0) throw InputError("r and s must be nonzero");
  if (k < 2) throw InputError("k must be >= 2");
  for (std::int64_t p : prime_divisors(k)) {
    Theta th = theta(p, r, s);
    const WreathGroup& G = th.group;
    auto order = G.order();
    if (!order || *order > budget) continue;
    WreathElement target = G.multiply(G.power(th.image_a, r), G.power(th.image_b, s));
    if (target.shift != 0) throw InvariantViolation("θ(a^r b^s) has nonzero shift");
    PowerSearch search = is_pth_power_exhaustive(G, target, budget);
    if (search.root) throw InvariantViolation("θ(a^r b^s) is a p-th power: " + G.to_string(*search.root));
    std::string label = "(Z/" + std::to_string(p) + ")^" + std::to_string(G.dimension()) + " x| Z/" +
                        std::to_string(G.shift_modulus());
    return {r, s, k, p, th.i, th.j, th.m, th.n, th.swapped, G.order_exponent(), *order,
            th.image_a, th.image_b, target, search.visited, label};
  }
  throw BudgetExceeded("no prime divisor of k gives a group within the enumeration budget");
}

/// Independent re-check of a certificate: recomputes the target from the
/// stored images and repeats the enumeration.
inline bool check_certificate(const BaumslagCertificate& c, std::uint64_t budget = 10'000'000) {
  if (c.k % c.p != 0 || !is_prime(c.p)) return false;
  WreathGroup G(static_cast<std::uint32_t>(c.p), static_cast<std::uint32_t>(c.j));
  G.check(c.image_a);
  G.check(c.image_b);
  WreathElement t = G.eval_word(freegroup::FreeWord::generator(0, c.r) * freegroup::FreeWord::generator(1, c.s),
                                {c.image_a, c.image_b});
  if (!(t == c.target) || t == G.identity()) return false;
  PowerSearch search = is_pth_power_exhaustive(G, t, budget);
  return !search.root && G.order() && search.visited == *G.order();
}

}  // namespace vk::pgroup
