#include <gtest/gtest.h>

#include "vk/complexes/analysis.hpp"
#include "vk/complexes/constructions.hpp"
#include "vk/freegroup/parser.hpp"
#include "vk/linalg/dense.hpp"
#include "vk/vankampen/vankampen.hpp"

using namespace vk::vankampen;
using vk::linalg::BigRat;
using vk::linalg::RatDense;
namespace cx = vk::complexes;

namespace {

// Oracle: solve the 4×4 system over ℚ and take the sign of a rational determinant.
int oracle_sign(const GenericMap4& f, const std::array<int, 3>& s, const std::array<int, 3>& t) {
  auto P = [&](int v, int r) { return BigRat(f.points[static_cast<std::size_t>(v)][static_cast<std::size_t>(r)]); };
  RatDense A(4, 4), E(4, 4);
  std::vector<BigRat> b(4);
  for (int r = 0; r < 4; ++r) {
    A(r, 0) = P(s[1], r) - P(s[0], r);
    A(r, 1) = P(s[2], r) - P(s[0], r);
    A(r, 2) = P(t[0], r) - P(t[1], r);
    A(r, 3) = P(t[0], r) - P(t[2], r);
    b[static_cast<std::size_t>(r)] = P(t[0], r) - P(s[0], r);
    for (int c = 0; c < 4; ++c) E(r, c) = c < 2 ? A(r, c) : BigRat(-A(r, c));
  }
  auto x = vk::linalg::solve_linear_rational(A, b);
  if (!x) return 99;
  auto inside = [](const BigRat& u, const BigRat& v) { return u > 0 && v > 0 && u + v < 1; };
  if (!inside((*x)[0], (*x)[1]) || !inside((*x)[2], (*x)[3])) return 0;
  return sgn(vk::linalg::det4(E));
}

cx::SimplicialComplex two_triangles() {
  cx::SimplicialComplex c;
  for (int i = 0; i < 6; ++i) c.add_vertex();
  c.add_triangle(0, 1, 2);
  c.add_triangle(3, 4, 5);
  return c;
}

GenericMap4 coordinate_planes(std::int64_t shift) {
  GenericMap4 f;
  f.points = {{-1, -1, 0, 0}, {2, -1, 0, 0}, {-1, 2, 0, 0},
              {shift, 0, -1, -1}, {shift, 0, 2, -1}, {shift, 0, -1, 2}};
  return f;
}

struct Named {
  std::string name;
  cx::SimplicialComplex c;
  bool vanishes_z;
};

std::vector<Named> catalog() {
  return {{"delta62", cx::skeleton_of_simplex(6, 2), false},
          {"bowtie", cx::bowtie(), true},
          {"X1", cx::complex_Xk(1), true},
          {"X2", cx::complex_Xk(2), false},
          {"X3", cx::complex_Xk(3), true},
          {"X4", cx::complex_Xk(4), false},
          {"X5", cx::complex_Xk(5), true},
          {"FKT", cx::complex_FKT(vk::freegroup::parse_word("[a,b]")), true},
          {"P3", cx::pseudo_projective_plane(3), true}};
}

}  // namespace

TEST(IntersectionSign, HandPlacedTriangles) {
  EXPECT_EQ(triangle_intersection_sign(coordinate_planes(0), {0, 1, 2}, {3, 4, 5}), 1);
  EXPECT_EQ(triangle_intersection_sign(coordinate_planes(0), {1, 0, 2}, {3, 4, 5}), -1);
  EXPECT_EQ(triangle_intersection_sign(coordinate_planes(0), {0, 1, 2}, {3, 5, 4}), -1);
  EXPECT_EQ(triangle_intersection_sign(coordinate_planes(0), {3, 4, 5}, {0, 1, 2}), 1);
  EXPECT_EQ(triangle_intersection_sign(coordinate_planes(5), {0, 1, 2}, {3, 4, 5}), 0);
  EXPECT_THROW(triangle_intersection_sign(coordinate_planes(0), {0, 1, 2}, {2, 4, 5}), vk::InputError);
  EXPECT_EQ(van_kampen_vector(two_triangles(), coordinate_planes(0)), (std::vector<BigInt>{1}));
}

TEST(IntersectionSign, DegenerateMapsRejected) {
  auto c = two_triangles();
  GenericMap4 flat;  // all six points in the plane x3 = x4 = 0
  flat.points = {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {5, 5, 0, 0}, {6, 5, 0, 0}, {5, 6, 0, 0}};
  EXPECT_THROW(check_general_position(c, flat), vk::GeneralPositionError);
  GenericMap4 touching = coordinate_planes(0);
  touching.points[3] = {0, 0, 0, 0};  // τ's vertex lands inside σ
  touching.points[4] = {0, 0, 1, 0};
  touching.points[5] = {0, 0, 0, 1};
  EXPECT_THROW(check_general_position(c, touching), vk::GeneralPositionError);
  GenericMap4 repeated = coordinate_planes(0);
  repeated.points[5] = repeated.points[0];
  EXPECT_THROW(check_general_position(c, repeated), vk::GeneralPositionError);
  EXPECT_NO_THROW(check_general_position(c, coordinate_planes(0)));
}

TEST(GenericMap, DeterministicAndResampled) {
  auto d = cx::skeleton_of_simplex(6, 2);
  auto f = random_generic_map(d, 42), g = random_generic_map(d, 42), h = random_generic_map(d, 43);
  EXPECT_EQ(f.points, g.points);
  EXPECT_NE(f.points, h.points);
  EXPECT_EQ(f.range, 10000);
  for (const auto& p : f.points)
    for (auto x : p) EXPECT_LE(std::abs(x), 10000);
  // coordinates in {−1,0,1} are almost never generic for Δ₆²; the range must grow
  auto tiny = random_generic_map(d, 7, 1, 12);
  EXPECT_GT(tiny.attempts, 1);
  EXPECT_EQ(tiny.range, std::int64_t(1) << (tiny.attempts - 1));
  EXPECT_NO_THROW(check_general_position(d, tiny));
  EXPECT_THROW(random_generic_map(d, 7, 1, 1), vk::GeneralPositionError);
  auto single = cx::skeleton_of_simplex(2, 2);
  EXPECT_EQ(random_generic_map(single, 1).attempts, 1);
  EXPECT_TRUE(van_kampen_vector(single, random_generic_map(single, 1)).empty());
}

TEST(IntersectionSign, AgreesWithRationalOracle) {
  for (const auto& c : {cx::skeleton_of_simplex(6, 2), cx::complex_Xk(2)}) {
    PairIndex index(c);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto f = random_generic_map(c, seed, seed % 2 ? 10000 : 6);
      auto v = van_kampen_vector(f, index);
      for (std::size_t k = 0; k < index.size(); ++k) {
        auto [a, b] = index.pair(k);
        ASSERT_EQ(v[k], oracle_sign(f, a, b)) << "pair " << k << " seed " << seed;
        ASSERT_EQ(triangle_intersection_sign(f, b, a), v[k]);  // symmetric pairing
      }
    }
  }
}

TEST(PairIndex, Structure) {
  auto d = cx::skeleton_of_simplex(6, 2);
  PairIndex index(d);
  EXPECT_EQ(index.size(), 70u);  // 35 · C(4,3) / 2
  for (std::size_t k = 0; k < index.size(); ++k) {
    auto [a, b] = index.pair(k);
    EXPECT_FALSE(cx::shares_vertex(a, b));
    EXPECT_EQ(index.row(a, b), k);
    EXPECT_EQ(index.row(b, a), k);
    if (k) EXPECT_LT(index.pairs()[k - 1], index.pairs()[k]);
  }
  EXPECT_EQ(PairIndex(cx::skeleton_of_simplex(4, 2)).size(), 0u);
}

TEST(FingerMoves, ColumnShape) {
  auto d = cx::skeleton_of_simplex(6, 2);
  auto W = finger_move_matrix(d);
  EXPECT_EQ(W.cols(), 210u);  // 35 triangles · C(4,2) disjoint edges
  auto dense = W.to_dense();
  for (std::size_t c = 0; c < W.cols(); ++c) {
    BigInt sum = 0;
    int nz = 0;
    for (std::size_t r = 0; r < W.rows(); ++r) {
      sum += dense(r, c);
      nz += dense(r, c) != 0;
      EXPECT_LE(abs(dense(r, c)), 1);
    }
    EXPECT_EQ(nz, 2);
    EXPECT_TRUE(vk::linalg::divides(BigInt(2), sum));
  }
  // ∂Δ³ has no edge disjoint from a triangle; in Δ₄² the moves exist but touch no disjoint pair
  EXPECT_EQ(finger_move_matrix(cx::skeleton_of_simplex(3, 2)).cols(), 0u);
  auto w4 = finger_move_matrix(cx::skeleton_of_simplex(4, 2));
  EXPECT_EQ(w4.cols(), 10u);
  EXPECT_EQ(w4.rows(), 0u);
  EXPECT_EQ(incidence({0, 1, 2}, {1, 2}), 1);
  EXPECT_EQ(incidence({0, 1, 2}, {0, 2}), -1);
  EXPECT_EQ(incidence({0, 1, 2}, {0, 1}), 1);
  EXPECT_EQ(incidence({0, 1, 2}, {3, 4}), 0);
}

TEST(Delta62, OddIntersectionCount) {
  auto d = cx::skeleton_of_simplex(6, 2);
  PairIndex index(d);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BigInt sum = 0;
    for (const auto& x : van_kampen_vector(random_generic_map(d, seed), index)) sum += x;
    EXPECT_FALSE(vk::linalg::divides(BigInt(2), sum)) << "seed " << seed;
  }
  // the all-ones functional is an independent mod 2 certificate
  auto W = finger_move_matrix(d, index);
  vk::linalg::NonMembershipCertificate ones{std::vector<BigInt>(index.size(), BigInt(1)), BigInt(2)};
  EXPECT_TRUE(vk::linalg::check_certificate(W, van_kampen_vector(random_generic_map(d, 3), index), ones));
}

TEST(FingerMoves, DifferenceOfMapsAndOrderTwo) {
  for (const auto& [name, c, vanishes] : catalog()) {
    PairIndex index(c);
    vk::linalg::ColumnLattice L(finger_move_matrix(c, index));
    std::vector<std::vector<BigInt>> vs;
    for (std::uint64_t seed = 100; seed < 104; ++seed) vs.push_back(van_kampen_vector(random_generic_map(c, seed), index));
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::vector<BigInt> twice(vs[i].size()), diff(vs[i].size());
      for (std::size_t k = 0; k < vs[i].size(); ++k) {
        twice[k] = 2 * vs[i][k];
        diff[k] = vs[i][k] - vs[(i + 1) % vs.size()][k];
      }
      EXPECT_TRUE(L.solve(diff).member) << name;
      EXPECT_TRUE(L.solve(twice).member) << name;
    }
  }
}

TEST(Obstruction, VerdictsAreSeedIndependent) {
  for (const auto& [name, c, vanishes] : catalog())
    for (auto ring : {Ring::Z, Ring::Z2})
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto o = obstruction(c, ring, seed);
        EXPECT_EQ(o.vanishes, vanishes) << name << " " << to_string(ring) << " seed " << seed;
        EXPECT_EQ(o.witness.has_value(), o.vanishes);
        EXPECT_EQ(o.certificate.has_value(), !o.vanishes);
        EXPECT_EQ(o.vector.size(), o.pair_count);
      }
}

TEST(Obstruction, WitnessesAndCertificatesCheckOut) {
  auto x3 = cx::complex_Xk(3);
  PairIndex index(x3);
  auto W = finger_move_matrix(x3, index);
  auto o = obstruction(x3, Ring::Z, 9);
  ASSERT_TRUE(o.vanishes);
  EXPECT_EQ(W.multiply(*o.witness), o.vector);
  EXPECT_GT(o.nonzero_entries, 0u);
  EXPECT_GT(o.witness_norm, 0);

  auto x2 = cx::complex_Xk(2);
  PairIndex i2(x2);
  auto W2 = finger_move_matrix(x2, i2);
  auto n = obstruction(x2, Ring::Z, 9);
  ASSERT_FALSE(n.vanishes);
  EXPECT_TRUE(vk::linalg::check_certificate(W2, n.vector, *n.certificate));
  EXPECT_EQ(n.certificate->modulus, 2);
  auto bad = *n.certificate;
  bad.modulus = 0;
  EXPECT_FALSE(vk::linalg::check_certificate(W2, n.vector, bad));
  EXPECT_EQ(parse_ring("Z2"), Ring::Z2);
  EXPECT_THROW(parse_ring("Q"), vk::InputError);
}

TEST(Obstruction, SubdivisionInvariance) {
  auto x3 = cx::stellar_subdivide_tagged(cx::complex_Xk(3), "piece");
  auto x2 = cx::stellar_subdivide_tagged(cx::complex_Xk(2), "piece");
  for (std::uint64_t seed : {1, 2}) {
    EXPECT_TRUE(obstruction(x3, Ring::Z, seed).vanishes);
    EXPECT_FALSE(obstruction(x2, Ring::Z, seed).vanishes);
  }
  auto fine = cx::barycentric_subdivision(cx::pseudo_projective_plane(3));
  EXPECT_TRUE(obstruction(fine, Ring::Z, 1).vanishes);
}
