#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vk/error.hpp"
#include "vk/freegroup/word.hpp"

namespace vk::freegroup {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Syntax tree of a group word. Kept separate from FreeWord so that words with
/// huge exponents can be evaluated homomorphically in other groups.
struct WordExpr {
  enum class Kind { Identity, Generator, Product, Power, Commutator };
  Kind kind = Kind::Identity;
  int gen = 0;
  std::int64_t exponent = 1;
  std::vector<WordExpr> children;

  static WordExpr identity() { return {}; }
  static WordExpr generator(int g) { return {Kind::Generator, g, 1, {}}; }
  static WordExpr power(WordExpr base, std::int64_t e) { return {Kind::Power, 0, e, {std::move(base)}}; }
  static WordExpr product(std::vector<WordExpr> parts) { return {Kind::Product, 0, 1, std::move(parts)}; }
  static WordExpr commutator(WordExpr u, WordExpr v) { return {Kind::Commutator, 0, 1, {std::move(u), std::move(v)}}; }

  int generator_bound() const {
    int g = kind == Kind::Generator ? gen + 1 : 0;
    for (const auto& c : children) g = std::max(g, c.generator_bound());
    return g;
  }
};

/// Evaluates an expression in any group given as
///   one(), gen(int), mul(x, y), inv(x), and optionally pow_gen(g, e).
template <class Group>
auto evaluate(const WordExpr& e, const Group& G) -> decltype(G.one()) {
  using Elem = decltype(G.one());
  switch (e.kind) {
    case WordExpr::Kind::Identity:
      return G.one();
    case WordExpr::Kind::Generator:
      return G.gen(e.gen);
    case WordExpr::Kind::Product: {
      Elem acc = G.one();
      for (const auto& c : e.children) acc = G.mul(acc, evaluate(c, G));
      return acc;
    }
    case WordExpr::Kind::Commutator: {
      Elem u = evaluate(e.children[0], G), v = evaluate(e.children[1], G);
      return G.mul(G.mul(u, v), G.mul(G.inv(u), G.inv(v)));
    }
    case WordExpr::Kind::Power: {
      const WordExpr& base = e.children[0];
      if constexpr (requires { G.pow_gen(0, std::int64_t{1}); }) {
        if (base.kind == WordExpr::Kind::Generator) return G.pow_gen(base.gen, e.exponent);
      }
      Elem b = evaluate(base, G);
      if (e.exponent < 0) b = G.inv(b);
      std::uint64_t k = e.exponent < 0 ? static_cast<std::uint64_t>(-(e.exponent + 1)) + 1
                                       : static_cast<std::uint64_t>(e.exponent);
      Elem acc = G.one();
      while (k) {
        if (k & 1) acc = G.mul(acc, b);
        k >>= 1;
        if (k) b = G.mul(b, b);
      }
      return acc;
    }
  }
  return G.one();
}

struct FreeGroupOps {
  FreeWord one() const { return {}; }
  FreeWord gen(int g) const { return FreeWord::generator(g); }
  FreeWord mul(const FreeWord& a, const FreeWord& b) const { return a * b; }
  FreeWord inv(const FreeWord& a) const { return a.inverse(); }
  FreeWord pow_gen(int g, std::int64_t e) const { return FreeWord::generator(g, e); }
};

inline FreeWord to_word(const WordExpr& e) { return evaluate(e, FreeGroupOps{}); }

/// Grammar (whitespace ignored):
///   expr   := factor { ['*'] factor }
///   factor := atom { '^' int }
///   atom   := letter | '1' | '(' expr ')' | '[' expr ',' expr { ',' expr } ']'
///   int    := ['+'|'-'] digits | '{' int '}'
/// Lowercase letters are generators, uppercase their inverses; [u,v] = u v u⁻¹ v⁻¹
/// and [u,v,w] = [[u,v],w].
class WordParser {
 public:
  explicit WordParser(std::string_view text) : s_(text) {}

  WordExpr parse() {
    WordExpr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!at(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '1' || c == '(' || c == '[';
  }

  WordExpr expr() {
    std::vector<WordExpr> parts;
    if (!starts_atom()) throw ParseError("expected a word", pos_);
    parts.push_back(factor());
    while (true) {
      if (at('*')) {
        ++pos_;
        if (!starts_atom()) throw ParseError("expected a word after '*'", pos_);
      } else if (!starts_atom()) {
        break;
      }
      parts.push_back(factor());
    }
    return parts.size() == 1 ? std::move(parts[0]) : WordExpr::product(std::move(parts));
  }

  WordExpr factor() {
    WordExpr a = atom();
    while (at('^')) {
      ++pos_;
      a = WordExpr::power(std::move(a), integer());
    }
    return a;
  }

  std::int64_t integer() {
    if (at('{')) {
      ++pos_;
      std::int64_t v = integer();
      expect('}');
      return v;
    }
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
      skip();
    }
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) throw ParseError("exponent too large", start);
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected an integer exponent", pos_);
    return neg ? -v : v;
  }

  WordExpr atom() {
    skip();
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      WordExpr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      WordExpr acc = expr();
      expect(',');
      acc = WordExpr::commutator(std::move(acc), expr());
      while (at(',')) {
        ++pos_;
        acc = WordExpr::commutator(std::move(acc), expr());
      }
      expect(']');
      return acc;
    }
    if (c == '1') {
      ++pos_;
      return WordExpr::identity();
    }
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return WordExpr::generator(c - 'a');
    }
    if (c >= 'A' && c <= 'Z') {
      ++pos_;
      return WordExpr::power(WordExpr::generator(c - 'A'), -1);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline WordExpr parse_expr(std::string_view text) { return WordParser(text).parse(); }
inline FreeWord parse_word(std::string_view text) { return to_word(parse_expr(text)); }

}  // namespace vk::freegroup
