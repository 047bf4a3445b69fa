#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "vk/freegroup/magnus.hpp"
#include "vk/freegroup/parser.hpp"
#include "vk/freegroup/word.hpp"
#include "vk/random.hpp"

using namespace vk::freegroup;
using vk::linalg::BigInt;

namespace {

FreeWord W(const char* s) { return parse_word(s); }

FreeWord random_word(vk::Rng& rng, int max_len, int gens = 2) {
  std::vector<int> l;
  int n = static_cast<int>(rng.index(static_cast<std::size_t>(max_len) + 1));
  for (int i = 0; i < n; ++i) {
    int g = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(gens)));
    l.push_back(rng.coin() ? g : -g);
  }
  return FreeWord::from_letters(l);
}

// Letter-by-letter expansion into a sparse polynomial map; shares no code with MagnusSeries.
using Poly = std::map<std::vector<int>, BigInt>;

Poly naive_magnus(const FreeWord& w, int D) {
  Poly p{{{}, BigInt(1)}};
  for (int l : w.letters()) {
    int g = std::abs(l) - 1;
    Poly factor;
    if (l > 0) {
      factor[{}] = 1;
      factor[{g}] = 1;
    } else {
      std::vector<int> m;
      for (int j = 0; j <= D; ++j) {
        factor[m] = j % 2 ? -1 : 1;
        m.push_back(g);
      }
    }
    Poly next;
    for (const auto& [m1, c1] : p)
      for (const auto& [m2, c2] : factor) {
        if (static_cast<int>(m1.size() + m2.size()) > D) continue;
        std::vector<int> m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        next[m] += c1 * c2;
      }
    p.clear();
    for (auto& [m, c] : next)
      if (c != 0) p[m] = c;
  }
  return p;
}

bool same_series(const MagnusSeries& s, const Poly& p) {
  Poly q;
  for (int d = 0; d <= s.degree(); ++d)
    for (std::size_t i = 0; i < s.coefficients(d).size(); ++i)
      if (s.coefficients(d)[i] != 0) q[s.monomial(d, i)] = s.coefficients(d)[i];
  return p == q;
}

}  // namespace

TEST(Parser, Commutator) { EXPECT_EQ(W("[a,b]"), FreeWord::from_letters({1, 2, -1, -2})); }

TEST(Parser, PowersGroupingAndInverses) {
  FreeWord w = W("(ab)^-3 a^3 b^3");
  EXPECT_EQ(w, FreeWord::from_letters({-2, -1, -2, -1, -2, -1, 1, 1, 1, 2, 2, 2}));
  EXPECT_EQ(W("(a*b)^{-3}*a^3*b^3"), w);
  EXPECT_EQ(W("a a^-1"), FreeWord{});
  EXPECT_EQ(W("A"), W("a^-1"));
  EXPECT_EQ(W("1"), FreeWord{});
  EXPECT_EQ(W(" [ a , b , b ] "), W("[[a,b],b]"));
  EXPECT_EQ(W("a^2^3"), W("a^6"));
}

TEST(Parser, ErrorsCarryPositions) {
  try {
    parse_word("ab)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 2u);
  }
  EXPECT_THROW(parse_word(""), ParseError);
  EXPECT_THROW(parse_word("[a b]"), ParseError);
  EXPECT_THROW(parse_word("a^"), ParseError);
  EXPECT_THROW(parse_word("a^x"), ParseError);
  EXPECT_THROW(parse_word("a $"), ParseError);
  EXPECT_THROW(parse_word("a*"), ParseError);
}

TEST(FreeWord, ToStringRoundTrips) {
  vk::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    FreeWord w = random_word(rng, 12, 3);
    EXPECT_EQ(parse_word(w.to_string()), w);
  }
}

TEST(FreeWord, GroupIdentities) {
  vk::Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    FreeWord w = random_word(rng, 15), v = random_word(rng, 15);
    EXPECT_EQ(w.inverse().inverse(), w);
    EXPECT_TRUE((w * w.inverse()).empty());
    EXPECT_EQ((w * v).inverse(), v.inverse() * w.inverse());
    EXPECT_EQ(w.pow(3), w * w * w);
    EXPECT_EQ(w.pow(-2), w.inverse() * w.inverse());
    auto [core, conj] = cyclic_reduce(w);
    EXPECT_EQ(conj * core * conj.inverse(), w);
    auto l = core.letters();
    if (l.size() >= 2) EXPECT_NE(l.front(), -l.back());
  }
  EXPECT_EQ(cyclic_reduce(W("a b a^-1")).core, W("b"));
}

TEST(FreeWord, CubeDefectIsThreeCommutators) {
  FreeWord rhs = W("(ab)^3 (ab)^-1 ([(ab)^-1,[b^-1,a]] [b^-1,a] [b^-2,a]) (ab)");
  EXPECT_TRUE((W("a^3 b^3") * rhs.inverse()).empty());
}

TEST(FreeWord, ConjugateProductCanBeACube) {
  FreeWord lhs = W("(a (b^-1 a b) (b^-1 a b)) ((a b a^-1)(a^2 b a^-2)(a b a^-1))");
  FreeWord rhs = W("(a b^-1 a)(ab)^3 (a b^-1 a)^-1");
  EXPECT_EQ(lhs, rhs);
}

TEST(FreeWord, Substitute) {
  EXPECT_EQ(substitute(W("[a,b]"), {W("a^3"), W("b^3")}), W("[a^3,b^3]"));
  vk::Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    FreeWord w = random_word(rng, 12);
    EXPECT_EQ(substitute(w, {W("a"), W("b")}), w);
    // a -> a^3, b -> b^2 never lowers the lower-central-series depth
    FreeWord s = substitute(w, {W("a^3"), W("b^2")});
    auto d0 = lcs_depth(w, 5), d1 = lcs_depth(s, 5);
    if (d0) {
      ASSERT_TRUE(d1);
      EXPECT_GE(*d1, *d0);
    }
  }
}

TEST(FreeWord, KthPowerOracle) {
  EXPECT_EQ(is_kth_power(W("(ab)^3"), 3), W("ab"));
  EXPECT_FALSE(is_kth_power(W("a^3 b^3"), 3));
  EXPECT_EQ(is_kth_power(W("a^6"), 3), W("a^2"));
  EXPECT_EQ(is_kth_power(W("b a^4 b^-1"), 2), W("b a^2 b^-1"));
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= 4; ++s)
      for (int k = 2; k <= 4; ++k) EXPECT_FALSE(is_kth_power(W("a").pow(r) * W("b").pow(s), k));
}

TEST(Magnus, Definitions) {
  EXPECT_EQ(magnus(W("a"), 2).to_string(), "1 + t_a");
  EXPECT_EQ(magnus(W("[a,b]"), 2).to_string(), "1 + t_a t_b - t_b t_a");
  EXPECT_EQ(magnus(W("a^-1"), 3).to_string(), "1 - t_a + t_a t_a - t_a t_a t_a");
}

TEST(Magnus, MatchesNaiveExpansionAndIsHomomorphic) {
  vk::Rng rng(24);
  for (int t = 0; t < 60; ++t) {
    FreeWord w = random_word(rng, 10), v = random_word(rng, 10);
    const int D = 4;
    EXPECT_TRUE(same_series(magnus(w, D), naive_magnus(w, D)));
    EXPECT_EQ(magnus(w * v, D), magnus(w, D) * magnus(v, D));
    EXPECT_EQ(magnus(w.inverse(), D) * magnus(w, D), MagnusSeries::one(2, D));
    EXPECT_EQ(magnus(w, D).inverse(), magnus(w.inverse(), D));
  }
}

TEST(Magnus, ExpressionEvaluationMatchesWordExpansion) {
  for (const char* s : {"(ab)^-3 a^3 b^3", "[a^5,b^-7]", "[[a,b],(ab)^4]^3", "a^3 b^{81}"}) {
    EXPECT_EQ(magnus(parse_expr(s), 5), magnus(parse_word(s), 5)) << s;
  }
}

TEST(GammaQuotient, CommutatorDepth) {
  EXPECT_TRUE(trivial_in_gamma_quotient(W("[a,b]"), 2));
  EXPECT_FALSE(trivial_in_gamma_quotient(W("[a,b]"), 3));
  EXPECT_FALSE(trivial_in_gamma_quotient(W("(ab)^-3 a^3 b^3"), 3));
  // With [u,v] = u v u^-1 v^-1 the correcting commutator on the alpha image must be
  // [a,b^-1] = [b^-1,a]^-1; the other sign doubles the defect to [b,a]^-6.
  EXPECT_TRUE(trivial_in_gamma_quotient(W("((ab)^-1 [a,b^-1])^3 a^3 b^3"), 3));
  EXPECT_EQ(lcs_depth(W("((ab)^-1 [b^-1,a])^3 a^3 b^3 [b,a]^6"), 3), 3);
  EXPECT_TRUE(trivial_in_gamma_quotient(W("a"), 1));
}

TEST(GammaQuotient, Depths) {
  EXPECT_EQ(lcs_depth(W("a"), 5), 1);
  EXPECT_EQ(lcs_depth(W("[[a,b],b]"), 5), 3);
  EXPECT_EQ(lcs_depth(W("[a^3,b^3]"), 5), 2);
  EXPECT_FALSE(lcs_depth(W("1"), 5).has_value());
}

TEST(GammaQuotient, MonotoneAndGraded) {
  vk::Rng rng(25);
  for (int t = 0; t < 80; ++t) {
    FreeWord u = random_word(rng, 8), v = random_word(rng, 8);
    if (t % 3 == 0) u = commutator(u, v);
    for (int n = 2; n <= 5; ++n)
      if (trivial_in_gamma_quotient(u, n))
        for (int m = 1; m < n; ++m) EXPECT_TRUE(trivial_in_gamma_quotient(u, m));
    auto du = lcs_depth(u, 6), dv = lcs_depth(v, 6), dc = lcs_depth(commutator(u, v), 6);
    if (du && dv && *du + *dv <= 6) {
      if (dc) EXPECT_GE(*dc, *du + *dv);
    }
  }
}
