#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "vk/linalg/dense.hpp"
#include "vk/linalg/homology.hpp"
#include "vk/linalg/int_matrix.hpp"
#include "vk/linalg/membership.hpp"
#include "vk/linalg/smith.hpp"
#include "vk/random.hpp"

using namespace vk::linalg;

namespace {

// Leibniz expansion over all permutations; independent of the elimination code.
BigRat leibniz_det(const RatDense& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  BigRat total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    BigRat term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

IntDense random_int(vk::Rng& rng, std::size_t r, std::size_t c, int range) {
  IntDense m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = BigInt(rng.uniform(-range, range));
  return m;
}

RatDense to_rat(const IntDense& m) {
  RatDense q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = BigRat(m(i, j));
  return q;
}

// gcd of all k x k minors (0 if all vanish), by subset enumeration.
BigInt determinantal_divisor(const IntDense& m, std::size_t k) {
  BigInt g = 0;
  std::vector<bool> rs(m.rows(), false), cs(m.cols(), false);
  std::fill(rs.begin(), rs.begin() + k, true);
  do {
    std::fill(cs.begin(), cs.end(), false);
    std::fill(cs.begin(), cs.begin() + k, true);
    do {
      RatDense sub(k, k);
      std::size_t a = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!rs[i]) continue;
        std::size_t b = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (cs[j]) sub(a, b++) = BigRat(m(i, j));
        ++a;
      }
      BigInt d = leibniz_det(sub).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::prev_permutation(cs.begin(), cs.end()));
  } while (std::prev_permutation(rs.begin(), rs.end()));
  return g;
}

std::size_t rational_rank(const IntDense& m) {
  std::size_t r = 0;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k)
    if (determinantal_divisor(m, k) != 0) r = k;
  return r;
}

// v in the column lattice of M iff appending v keeps the rank and the gcd of maximal minors.
bool lattice_oracle(const IntDense& m, const std::vector<BigInt>& v) {
  IntDense aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = v[i];
  }
  std::size_t r = rational_rank(m);
  if (rational_rank(aug) != r) return false;
  if (r == 0) return true;
  return determinantal_divisor(m, r) == determinantal_divisor(aug, r);
}

}  // namespace

TEST(Det4, IdentityAndRepeatedRow) {
  EXPECT_EQ(det4(RatDense::identity(4)), 1);
  RatDense m{{1, 2, 3, 4}, {5, 6, 7, 8}, {1, 2, 3, 4}, {0, 1, 0, 1}};
  EXPECT_EQ(det4(m), 0);
}

TEST(Det4, MatchesLeibnizOnRandomMatrices) {
  vk::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    RatDense m = to_rat(random_int(rng, 4, 4, 50));
    m(0, 1) /= 3;
    EXPECT_EQ(det4(m), leibniz_det(m));
    EXPECT_EQ(determinant(m), leibniz_det(m));
  }
}

TEST(SolveLinearRational, IdentitySingularAndSubstitution) {
  std::vector<BigRat> v{1, rat(2, 3), -5};
  EXPECT_EQ(*solve_linear_rational(RatDense::identity(3), v), v);
  RatDense sing{{1, 2}, {2, 4}};
  EXPECT_FALSE(solve_linear_rational(sing, {1, 1}).has_value());

  vk::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    RatDense a = to_rat(random_int(rng, 5, 5, 9));
    std::vector<BigRat> b(5);
    for (auto& x : b) x = rat(BigInt(rng.uniform(-20, 20)), BigInt(rng.uniform(1, 7)));
    auto x = solve_linear_rational(a, b);
    if (leibniz_det(a) == 0) {
      EXPECT_FALSE(x.has_value());
      continue;
    }
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, b);
  }
}

TEST(Smith, ZeroMatrix) {
  auto s = smith_normal_form(IntDense(3, 2));
  EXPECT_EQ(s.U, IntDense::identity(3));
  EXPECT_EQ(s.V, IntDense::identity(2));
  EXPECT_EQ(s.D, IntDense(3, 2));
}

TEST(Smith, HandReducedExample) {
  // [[2,4],[6,8]] -> row2 -= 3 row1 -> [[2,4],[0,-4]] -> col2 -= 2 col1 -> diag(2,-4) -> (2,4)
  IntDense m{{2, 4}, {6, 8}};
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.invariant_factors(), (std::vector<BigInt>{2, 4}));
  EXPECT_EQ(s.U * m * s.V, s.D);
}

TEST(Smith, RandomPropertiesAgainstDeterminantalDivisors) {
  vk::Rng rng(13);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = 1 + rng.index(4), c = 1 + rng.index(4);
    IntDense m = random_int(rng, r, c, 6);
    if (t % 3 == 0) m(0, 0) *= 4;
    auto s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_EQ(s.D(i, j), 0);
    auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) EXPECT_TRUE(divides(f[i], f[i + 1]));
    // d_k = d1 * ... * dk
    BigInt prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prod *= k <= f.size() ? f[k - 1] : BigInt(0);
      EXPECT_EQ(determinantal_divisor(m, k), prod);
    }
    if (r == c && leibniz_det(to_rat(m)) != 0) EXPECT_EQ(abs(determinant(s.D)), abs(determinant(m)));
  }
}

TEST(Membership, TrivialCases) {
  IntMatrix m = IntMatrix::from_dense(IntDense{{1, 2}, {3, 5}, {0, 7}});
  auto x0 = integer_membership(m, {0, 0, 0});
  ASSERT_TRUE(x0);
  EXPECT_EQ(m.multiply(*x0), (std::vector<BigInt>{0, 0, 0}));
  auto x1 = integer_membership(m, {1, 3, 0});
  ASSERT_TRUE(x1);
  EXPECT_EQ(*x1, (std::vector<BigInt>{1, 0}));

  IntMatrix two = IntMatrix::from_dense(IntDense{{2}});
  ColumnLattice lat(two);
  auto res = lat.solve({1});
  EXPECT_FALSE(res.member);
  ASSERT_TRUE(res.certificate);
  EXPECT_TRUE(check_certificate(two, {1}, *res.certificate));
  EXPECT_THROW(lat.solve({1, 2}), vk::InputError);
}

TEST(Membership, Mod2Trivial) {
  IntMatrix m = IntMatrix::from_dense(IntDense{{1, 1}});
  EXPECT_TRUE(mod2_membership(m, {0}));
  EXPECT_TRUE(mod2_membership(m, {1}));
  IntMatrix two = IntMatrix::from_dense(IntDense{{2}});
  EXPECT_FALSE(mod2_membership(two, {1}));
  EXPECT_TRUE(mod2_membership(two, {4}));
}

TEST(Membership, RandomAgainstDeterminantalOracle) {
  vk::Rng rng(14);
  int members = 0, non_members = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng.index(4), c = 1 + rng.index(4);
    IntDense d = random_int(rng, r, c, 3);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng.index(3) == 0) d(i, j) = 0;
    if (t % 2 == 0)
      for (std::size_t i = 0; i < r; ++i) d(i, 0) *= 2;
    std::vector<BigInt> v(r);
    for (auto& x : v) x = BigInt(rng.uniform(-4, 4));
    IntMatrix m = IntMatrix::from_dense(d);
    auto res = ColumnLattice(m).solve(v);
    ASSERT_EQ(res.member, lattice_oracle(d, v)) << "trial " << t;
    if (res.member) {
      ++members;
      EXPECT_TRUE(check_solution(m, v, *res.solution));
      EXPECT_TRUE(mod2_membership(m, v)) << "integer solution must reduce mod 2";
    } else {
      ++non_members;
      ASSERT_TRUE(res.certificate);
      EXPECT_TRUE(check_certificate(m, v, *res.certificate));
    }
    auto r2 = ColumnSpaceGf2(m).solve(v);
    if (r2.member) {
      std::vector<BigInt> prod = m.multiply(*r2.solution);
      for (std::size_t i = 0; i < r; ++i) EXPECT_TRUE(divides(BigInt(2), prod[i] - v[i]));
    } else {
      EXPECT_TRUE(check_certificate(m, v, *r2.certificate));
    }
  }
  EXPECT_GT(members, 20);
  EXPECT_GT(non_members, 20);
}

TEST(Membership, SparseLargeRoundTrip) {
  // ±1 sparse matrix with a planted solution.
  vk::Rng rng(15);
  const std::size_t rows = 300, cols = 500;
  IntMatrix m(rows, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<IntMatrix::Entry> e;
    for (int k = 0; k < 3; ++k) e.emplace_back(static_cast<std::uint32_t>(rng.index(rows)), BigInt(rng.coin() ? 1 : -1));
    if (c % 7 == 0) e.emplace_back(static_cast<std::uint32_t>(rng.index(rows)), BigInt(2));
    m.push_column(e);
  }
  std::vector<BigInt> x(cols);
  for (auto& xi : x) xi = BigInt(rng.uniform(-3, 3));
  auto v = m.multiply(x);
  ColumnLattice lat(m);
  auto res = lat.solve(v);
  ASSERT_TRUE(res.member);
  EXPECT_EQ(m.multiply(*res.solution), v);
  v[0] += 1;
  auto res2 = lat.solve(v);
  if (!res2.member) EXPECT_TRUE(check_certificate(m, v, *res2.certificate));
}

namespace {

IntMatrix boundary1(std::size_t nv, const std::vector<std::array<int, 2>>& edges) {
  IntMatrix d(nv, 0);
  for (auto [a, b] : edges) d.push_column({{b, BigInt(1)}, {a, BigInt(-1)}});
  return d;
}

IntMatrix boundary2(const std::vector<std::array<int, 2>>& edges, const std::vector<std::array<int, 3>>& tris) {
  IntMatrix d(edges.size(), 0);
  auto idx = [&](int a, int b) {
    return static_cast<std::uint32_t>(std::find(edges.begin(), edges.end(), std::array<int, 2>{a, b}) - edges.begin());
  };
  for (auto [a, b, c] : tris) d.push_column({{idx(b, c), BigInt(1)}, {idx(a, c), BigInt(-1)}, {idx(a, b), BigInt(1)}});
  return d;
}

}  // namespace

TEST(Homology, TetrahedronBoundaryIsSphere) {
  std::vector<std::array<int, 2>> e;
  std::vector<std::array<int, 3>> t;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) e.push_back({a, b});
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) t.push_back({a, b, c});
  auto h = homology_via_snf(boundary1(4, e), boundary2(e, t));
  EXPECT_EQ(h.describe(0), "Z");
  EXPECT_EQ(h.describe(1), "0");
  EXPECT_EQ(h.describe(2), "Z");
}

TEST(Homology, SkeletonOfSixSimplexAgainstRationalRank) {
  std::vector<std::array<int, 2>> e;
  std::vector<std::array<int, 3>> t;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) e.push_back({a, b});
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c) t.push_back({a, b, c});
  IntMatrix d2 = boundary2(e, t);
  // rank over Q by fraction-free elimination on the dense matrix
  RatDense q = to_rat(d2.to_dense());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < q.cols() && rank < q.rows(); ++c) {
    std::size_t p = rank;
    while (p < q.rows() && q(p, c) == 0) ++p;
    if (p == q.rows()) continue;
    q.swap_rows(p, rank);
    for (std::size_t r = rank + 1; r < q.rows(); ++r) {
      BigRat f = q(r, c) / q(rank, c);
      for (std::size_t j = c; j < q.cols(); ++j) q(r, j) -= f * q(rank, j);
    }
    ++rank;
  }
  EXPECT_EQ(rank, 15u);
  auto h = homology_via_snf(boundary1(7, e), d2);
  EXPECT_EQ(h.betti[2], 35u - rank);
  // Euler characteristic 7 - 21 + 35 = 1 - 0 + b2
  EXPECT_EQ(h.betti[2], 20u);
  EXPECT_EQ(h.describe(1), "0");
}

TEST(Homology, RejectsNonComplex) {
  IntMatrix d1 = IntMatrix::from_dense(IntDense{{1}});
  IntMatrix d2 = IntMatrix::from_dense(IntDense{{1}});
  EXPECT_THROW(homology_via_snf(d1, d2), vk::InputError);
}
