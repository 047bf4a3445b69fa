#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/freegroup/magnus.hpp"
#include "vk/freegroup/word.hpp"
#include "vk/linalg/bigint.hpp"

namespace vk::nilpotent {

using freegroup::FreeWord;
using linalg::BigInt;

/// Homogeneous degree-d noncommutative polynomial, dense in the Magnus index order.
using HomogeneousPoly = std::vector<BigInt>;

struct LyndonElement {
  std::vector<int> word;      // letters 0..g-1
  std::string bracket;        // standard bracketing in parser syntax, e.g. "[a,[a,b]]"
  FreeWord commutator;        // the basic commutator as a group element
  HomogeneousPoly lie;        // its degree-d Magnus component; lowest lex monomial is `word`
};

struct LyndonBasisLevel {
  int gens = 2;
  int degree = 1;
  std::vector<LyndonElement> elements;  // increasing lex order of words
};

/// Number of Lyndon words of length d over g letters: (1/d) Σ_{e|d} μ(e) g^{d/e}.
inline long long witt_number(int g, int d) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    return n > 1 ? -m : m;
  };
  long long total = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) {
      long long pw = 1;
      for (int i = 0; i < d / e; ++i) pw *= g;
      total += mobius(e) * pw;
    }
  return total / d;
}

namespace detail {

inline std::size_t poly_index(const std::vector<int>& w, int g) {
  std::size_t idx = 0;
  for (int x : w) idx = idx * static_cast<std::size_t>(g) + static_cast<std::size_t>(x);
  return idx;
}

inline bool is_lyndon(const std::vector<int>& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!(w < std::vector<int>(w.begin() + static_cast<std::ptrdiff_t>(i), w.end()))) return false;
  return !w.empty();
}

// u·v - v·u for homogeneous polys of lengths du, dv
inline HomogeneousPoly lie_bracket(const HomogeneousPoly& u, int du, const HomogeneousPoly& v, int dv, int g) {
  std::size_t pu = 1, pv = 1;
  for (int i = 0; i < du; ++i) pu *= static_cast<std::size_t>(g);
  for (int i = 0; i < dv; ++i) pv *= static_cast<std::size_t>(g);
  HomogeneousPoly out(pu * pv, BigInt(0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        out[i * pv + j] += u[i] * v[j];
        out[j * pu + i] -= u[i] * v[j];
      }
  }
  return out;
}

struct Bracketed {
  std::string text;
  FreeWord group;
  HomogeneousPoly lie;
};

inline Bracketed bracket(const std::vector<int>& w, int g, std::map<std::vector<int>, Bracketed>& memo) {
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  Bracketed out;
  if (w.size() == 1) {
    out.text = std::string(1, freegroup::generator_letter(w[0]));
    out.group = FreeWord::generator(w[0]);
    out.lie.assign(static_cast<std::size_t>(g), BigInt(0));
    out.lie[static_cast<std::size_t>(w[0])] = 1;
  } else {
    // standard factorization: v is the longest proper suffix that is Lyndon
    std::size_t split = w.size() - 1;
    for (std::size_t i = 1; i < w.size(); ++i)
      if (is_lyndon(std::vector<int>(w.begin() + static_cast<std::ptrdiff_t>(i), w.end()))) {
        split = i;
        break;
      }
    std::vector<int> u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<int> v(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
    Bracketed bu = bracket(u, g, memo), bv = bracket(v, g, memo);
    out.text = "[" + bu.text + "," + bv.text + "]";
    out.group = freegroup::commutator(bu.group, bv.group);
    out.lie = lie_bracket(bu.lie, static_cast<int>(u.size()), bv.lie, static_cast<int>(v.size()), g);
  }
  memo.emplace(w, out);
  return out;
}

}  // namespace detail

/// All Lyndon words of length d over g letters (Duval's generation, lex order)
/// with their standard bracketings.
inline LyndonBasisLevel lyndon_words(int g, int d) {
  if (g < 1 || d < 1) throw InputError("Lyndon basis needs g >= 1 and d >= 1");
  LyndonBasisLevel level{g, d, {}};
  std::map<std::vector<int>, detail::Bracketed> memo;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == d) {
      auto b = detail::bracket(w, g, memo);
      level.elements.push_back({w, b.text, b.group, b.lie});
    }
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < d) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == g - 1) w.pop_back();
  }
  if (static_cast<long long>(level.elements.size()) != witt_number(g, d))
    throw InvariantViolation("Lyndon enumeration disagrees with the Witt formula");
  return level;
}

/// Coordinates of a homogeneous Lie element in the basis of standard
/// bracketings, by unitriangular elimination in increasing lex order.
/// Throws InvariantViolation when the input is not in the integral span.
inline std::vector<BigInt> lie_decompose(const LyndonBasisLevel& level, HomogeneousPoly component) {
  std::vector<BigInt> coords;
  for (const auto& e : level.elements) {
    const std::size_t lead = detail::poly_index(e.word, level.gens);
    BigInt c = component[lead];  // e.lie has coefficient 1 at its own word
    if (e.lie[lead] != 1) throw InvariantViolation("Lyndon bracket lacks a unit leading term");
    if (c != 0)
      for (std::size_t i = 0; i < component.size(); ++i)
        if (e.lie[i] != 0) component[i] -= c * e.lie[i];
    coords.push_back(c);
  }
  for (const auto& x : component)
    if (x != 0) throw InvariantViolation("degree component is not a Lie element");
  return coords;
}

}  // namespace vk::nilpotent
