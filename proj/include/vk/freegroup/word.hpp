#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vk/error.hpp"

namespace vk::freegroup {

/// Generator index g is printed as the letter 'a' + g.
inline char generator_letter(int g) { return static_cast<char>('a' + g); }

/// Reduced word in a free group, stored as syllables x_g^e with e != 0 and
/// adjacent syllables on distinct generators.
class FreeWord {
 public:
  struct Syllable {
    int gen;
    std::int64_t exp;
    friend bool operator==(const Syllable&, const Syllable&) = default;
  };

  FreeWord() = default;

  static FreeWord generator(int g, std::int64_t exp = 1) {
    FreeWord w;
    w.append(g, exp);
    return w;
  }

  /// Letters as signed 1-based generator indices: +1 = a, -1 = a⁻¹, +2 = b, ...
  static FreeWord from_letters(const std::vector<int>& letters) {
    FreeWord w;
    for (int l : letters) {
      if (l == 0) throw InputError("letter 0 is not a generator");
      w.append(std::abs(l) - 1, l > 0 ? 1 : -1);
    }
    return w;
  }

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }

  /// Number of letters.
  std::int64_t length() const {
    std::int64_t n = 0;
    for (const auto& s : syl_) n += s.exp < 0 ? -s.exp : s.exp;
    return n;
  }

  /// One more than the largest generator index used (0 for the empty word).
  int generator_bound() const {
    int g = 0;
    for (const auto& s : syl_) g = std::max(g, s.gen + 1);
    return g;
  }

  std::int64_t exponent_sum(int gen) const {
    std::int64_t e = 0;
    for (const auto& s : syl_)
      if (s.gen == gen) e += s.exp;
    return e;
  }

  std::vector<int> letters() const {
    std::vector<int> out;
    for (const auto& s : syl_)
      for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i) out.push_back(s.exp > 0 ? s.gen + 1 : -(s.gen + 1));
    return out;
  }

  /// Multiplies on the right by x_g^e, cancelling freely.
  void append(int gen, std::int64_t exp) {
    if (gen < 0 || gen >= 26) throw InputError("generator index out of range");
    if (exp == 0) return;
    if (!syl_.empty() && syl_.back().gen == gen) {
      syl_.back().exp += exp;
      if (syl_.back().exp == 0) syl_.pop_back();
    } else {
      syl_.push_back({gen, exp});
    }
  }

  FreeWord inverse() const {
    FreeWord w;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
    return w;
  }

  friend FreeWord operator*(FreeWord a, const FreeWord& b) {
    for (const auto& s : b.syl_) a.append(s.gen, s.exp);
    return a;
  }
  FreeWord& operator*=(const FreeWord& b) { return *this = *this * b; }

  FreeWord pow(std::int64_t k) const {
    FreeWord base = k < 0 ? inverse() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    FreeWord out;
    while (e) {
      if (e & 1) out *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return out;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  /// Parser syntax: "a b^3 a^-1"; the empty word prints as "1".
  std::string to_string() const {
    if (syl_.empty()) return "1";
    std::string s;
    for (const auto& y : syl_) {
      if (!s.empty()) s += ' ';
      s += generator_letter(y.gen);
      if (y.exp != 1) s += "^" + std::to_string(y.exp);
    }
    return s;
  }

 private:
  std::vector<Syllable> syl_;
};

inline FreeWord commutator(const FreeWord& u, const FreeWord& v) { return u * v * u.inverse() * v.inverse(); }

/// w = conjugator · core · conjugator⁻¹ with core cyclically reduced.
struct CyclicReduction {
  FreeWord core;
  FreeWord conjugator;
};

inline CyclicReduction cyclic_reduce(const FreeWord& w) {
  std::vector<int> l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  CyclicReduction out;
  out.conjugator = FreeWord::from_letters(std::vector<int>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i)));
  std::vector<int> core(l.begin() + static_cast<std::ptrdiff_t>(i), l.begin() + static_cast<std::ptrdiff_t>(j));
  out.core = FreeWord::from_letters(core);
  return out;
}

/// Replaces generator g by images[g] and reduces.
inline FreeWord substitute(const FreeWord& w, const std::vector<FreeWord>& images) {
  FreeWord out;
  for (const auto& s : w.syllables()) {
    if (s.gen >= static_cast<int>(images.size())) throw InputError("no image given for generator " + std::string(1, generator_letter(s.gen)));
    out *= images[static_cast<std::size_t>(s.gen)].pow(s.exp);
  }
  return out;
}

/// Brute-force search for u with u^k = w: cyclically reduce w = c·w'·c⁻¹ and
/// enumerate every reduced word of length ≤ |w'|/k. Throws BudgetExceeded when
/// more than `budget` candidates would be needed.
inline std::optional<FreeWord> is_kth_power(const FreeWord& w, std::int64_t k, int gens = 2,
                                            std::uint64_t budget = 20'000'000) {
  if (k < 2) throw InputError("power test needs k >= 2");
  gens = std::max(gens, w.generator_bound());
  auto [core, conj] = cyclic_reduce(w);
  if (core.empty()) return FreeWord{};
  const std::int64_t max_len = core.length() / k;
  std::uint64_t visited = 0;
  std::vector<int> letters;
  std::optional<FreeWord> found;

  auto dfs = [&](auto&& self) -> void {
    if (found) return;
    if (++visited > budget) throw BudgetExceeded("k-th power oracle exceeded its candidate budget");
    if (!letters.empty()) {
      FreeWord u = FreeWord::from_letters(letters);
      if (u.pow(k) == core) {
        found = conj * u * conj.inverse();
        return;
      }
    }
    if (static_cast<std::int64_t>(letters.size()) == max_len) return;
    for (int g = 1; g <= gens; ++g)
      for (int l : {g, -g}) {
        if (!letters.empty() && letters.back() == -l) continue;
        letters.push_back(l);
        self(self);
        letters.pop_back();
        if (found) return;
      }
  };
  dfs(dfs);
  return found;
}

}  // namespace vk::freegroup
