#include <gtest/gtest.h>

#include <cmath>

#include "vk/complexes/constructions.hpp"
#include "vk/linalg/membership.hpp"
#include "vk/spatial/coning.hpp"
#include "vk/spatial/spatial.hpp"
#include "vk/spatial/twisted.hpp"

using namespace vk::spatial;
using vk::linalg::BigInt;

namespace {

// Gauss linking integral, summed exactly per pair of straight segments via the
// signed solid-angle formula. Floating point, independent of any projection.
double gauss_linking(const Polyline& P, const Polyline& Q) {
  using V = std::array<double, 3>;
  auto D = [](const Point3& p) { return V{p[0].get_d(), p[1].get_d(), p[2].get_d()}; };
  auto sub3 = [](V a, V b) { return V{a[0] - b[0], a[1] - b[1], a[2] - b[2]}; };
  auto cr = [](V a, V b) { return V{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}; };
  auto dt = [](V a, V b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
  auto unit = [&](V a) {
    double l = std::sqrt(dt(a, a));
    return V{a[0] / l, a[1] / l, a[2] / l};
  };
  auto asin_c = [](double x) { return std::asin(std::max(-1.0, std::min(1.0, x))); };
  double total = 0;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < Q.size(); ++j) {
      V r1 = D(P[i]), r2 = D(P[(i + 1) % P.size()]), r3 = D(Q[j]), r4 = D(Q[(j + 1) % Q.size()]);
      V r13 = sub3(r3, r1), r14 = sub3(r4, r1), r23 = sub3(r3, r2), r24 = sub3(r4, r2);
      V n1 = unit(cr(r13, r14)), n2 = unit(cr(r14, r24)), n3 = unit(cr(r24, r23)), n4 = unit(cr(r23, r13));
      double om = asin_c(dt(n1, n2)) + asin_c(dt(n2, n3)) + asin_c(dt(n3, n4)) + asin_c(dt(n4, n1));
      total += (dt(cr(sub3(r4, r3), sub3(r2, r1)), r13) > 0 ? 1 : -1) * om;
    }
  return total / (4 * M_PI);
}

Polyline square_xy() { return {point(-10, -10, 0), point(10, -10, 0), point(10, 10, 0), point(-10, 10, 0)}; }
Polyline square_xz(long long dx) {
  return {point(dx, 0, -10), point(dx + 20, 0, -10), point(dx + 20, 0, 10), point(dx, 0, 10)};
}

long long as_ll(const BigInt& x) { return x.get_si(); }

}  // namespace

TEST(Linking, HopfAndSplit) {
  EXPECT_EQ(abs(linking_number(square_xy(), square_xz(0))), 1);
  EXPECT_EQ(linking_number(square_xy(), square_xz(40)), 0);
  EXPECT_NEAR(gauss_linking(square_xy(), square_xz(0)), as_ll(linking_number(square_xy(), square_xz(0))), 1e-9);
  EXPECT_NEAR(gauss_linking(square_xy(), square_xz(40)), 0, 1e-9);
}

TEST(Linking, SymmetryAndReversal) {
  auto A = square_xy(), B = square_xz(0);
  Polyline Br(B.rbegin(), B.rend());
  EXPECT_EQ(linking_number(A, B), linking_number(B, A));
  EXPECT_EQ(linking_number(A, Br), -linking_number(A, B));
}

TEST(Linking, ProjectionInvariance) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto g = random_straight_K6(s);
    for (const auto& [c1, c2] : disjoint_cycle_pairs(g.graph())) {
      auto P = g.cycle_polyline(c1), Q = g.cycle_polyline(c2);
      std::optional<BigInt> first;
      int used = 0;
      for (const auto& d : candidate_directions(40, s + 100)) {
        auto lk = linking_number_along(P, Q, d);
        if (!lk) continue;
        if (first) EXPECT_EQ(*lk, *first);
        else first = lk;
        if (++used == 5) break;
      }
      EXPECT_EQ(used, 5);
      EXPECT_NEAR(gauss_linking(P, Q), as_ll(*first), 1e-6);
    }
  }
}

TEST(Projection, Degeneracies) {
  SpatialGraph g;
  g.add_vertex(point(0, 0, 0));
  g.add_vertex(point(0, 0, 5));
  g.add_vertex(point(3, 0, 0));
  g.add_vertex(point(3, 0, 5));
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  EXPECT_FALSE(validate_projection(g, point(0, 0, 1)).ok);
  EXPECT_TRUE(validate_projection(g, point(1, 2, 7)).ok);

  SpatialGraph k4;
  k4.add_vertex(point(0, 0, 0));
  k4.add_vertex(point(10, 0, 0));
  k4.add_vertex(point(0, 10, 0));
  k4.add_vertex(point(3, 3, 0));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  auto rep = validate_projection(k4, point(0, 0, 1));
  EXPECT_TRUE(rep.ok) << rep.problem;
  EXPECT_TRUE(rep.crossings.empty());
}

TEST(Linking, RejectsSharedVertices) {
  auto g = random_straight_K6(3);
  EXPECT_THROW(linking_number(g, {0, 1, 2}, {2, 3, 4}), vk::InputError);
}

TEST(ConwayGordon, Pairs) {
  auto pairs = disjoint_cycle_pairs(random_straight_K6(0).graph());
  ASSERT_EQ(pairs.size(), 10u);
  bool has_123_456 = false;
  for (const auto& [a, b] : pairs) {
    std::set<int> all(a.begin(), a.end());
    all.insert(b.begin(), b.end());
    EXPECT_EQ(all.size(), 6u);
    has_123_456 = has_123_456 || (a == std::vector<int>{0, 1, 2} && b == std::vector<int>{3, 4, 5});
  }
  EXPECT_TRUE(has_123_456);
  SpatialGraph k5;
  for (int i = 0; i < 5; ++i) k5.add_vertex(point(i, i * i, i * i * i));
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5.add_edge(a, b);
  EXPECT_THROW(disjoint_cycle_pairs(k5.graph()), vk::InputError);
}

TEST(ConwayGordon, RandomStraightEmbeddingsAreOdd) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto om = conway_gordon_omega(random_straight_K6(s));
    EXPECT_EQ(om.mod2, 1) << "seed " << s;
    BigInt sum = 0;
    for (const auto& x : om.linking) sum += x;
    EXPECT_EQ(sum, om.sum);
  }
}

TEST(ConwayGordon, MirrorNegates) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto g = random_straight_K6(s);
    auto a = conway_gordon_omega(g), b = conway_gordon_omega(mirror(g));
    EXPECT_EQ(b.sum, -a.sum);
    EXPECT_EQ(b.mod2, a.mod2);
  }
}

TEST(ConwayGordon, CrossingChangesAreEven) {
  int changed = 0, tried = 0;
  for (std::uint64_t s = 0; s < 12; ++s) {
    auto g = random_straight_K6(s);
    const auto d = candidate_directions(1, s)[0];
    auto rep = validate_projection(g, d);
    if (!rep.ok) continue;
    const auto before = conway_gordon_omega(g);
    const auto segs = g.segments();
    for (const auto& c : rep.crossings) {
      // straight graph: segment index is edge index
      auto h = crossing_change(g, static_cast<int>(c.over), static_cast<int>(c.under), d);
      auto after = conway_gordon_omega(h);
      BigInt diff = after.sum - before.sum;
      EXPECT_EQ(diff % 2, 0);
      EXPECT_EQ(after.mod2, 1);
      changed += diff != 0;
      ++tried;
      // the detour really swaps the strands: the crossing reappears with opposite sign
      auto rep2 = validate_projection(h, d);
      ASSERT_TRUE(rep2.ok) << rep2.problem;
      int flipped = 0;
      for (const auto& x : rep2.crossings) flipped += x.sign != c.sign && x.at == c.at;
      EXPECT_EQ(flipped, 1);
      break;
    }
  }
  EXPECT_GE(tried, 8);
  EXPECT_GT(changed, 0);
}

TEST(Twisted, Profiles) {
  for (long long k : {1, -1, 3, -3, 5, 7, -9, 15}) {
    auto g = twisted_K6(k);
    auto prof = linking_profile(g);
    EXPECT_EQ(as_ll(prof[0]), k);
    for (std::size_t i = 1; i < prof.size(); ++i) EXPECT_EQ(prof[i], 0) << "k=" << k << " pair " << i;
    EXPECT_EQ(conway_gordon_omega(g).mod2, 1);
    EXPECT_EQ(as_ll(linking_number_checked(g, {0, 1, 2}, {3, 4, 5})), k);
    auto pairs = disjoint_cycle_pairs(g.graph());
    EXPECT_NEAR(gauss_linking(g.cycle_polyline(pairs[0].first), g.cycle_polyline(pairs[0].second)), double(k), 1e-6);
  }
  EXPECT_THROW(twisted_K6(0), vk::InputError);
  EXPECT_THROW(twisted_K6(4), vk::InputError);
}

TEST(Json, RoundTrip) {
  auto g = twisted_K6(3);
  auto j = to_json(g);
  auto back = spatial_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(linking_profile(back), linking_profile(g));
  auto half = spatial_from_json(nlohmann::json::parse(
      R"({"vertices":[{"id":0,"point":["1/2",0,0]},{"id":1,"point":[1,1,"-3/4"]}],
          "edges":[{"u":0,"v":1,"waypoints":[["2/3","1/3",0]]}]})"));
  EXPECT_EQ(half.point_of(0)[0], BigRat(1, 2));
  EXPECT_THROW(spatial_from_json(nlohmann::json::parse(R"({"vertices":[{"id":0,"point":[0,0]}],"edges":[]})")), vk::InputError);
  EXPECT_THROW(spatial_from_json(nlohmann::json::parse(R"({"vertices":[{"id":0,"point":[0,0,0]}],"edges":[{"u":0,"v":3}]})")),
               vk::InputError);
}

TEST(Coning, Delta62CarriesTheLinkingNumber) {
  auto d = vk::complexes::skeleton_of_simplex(6, 2);
  vk::vankampen::PairIndex index(d);
  const auto row = index.row({1, 2, 3}, {4, 5, 6});
  for (long long k : {1, -1, 3, 5}) {
    auto m = cone_delta62(d, twisted_K6(k));
    auto v = coned_van_kampen_vector(d, m);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != row) EXPECT_EQ(v[i], 0);
    // orientation convention: the cone scheme records −Lk
    EXPECT_EQ(as_ll(v[row]), -k);
    auto mirrored = coned_van_kampen_vector(d, cone_delta62(d, mirror(twisted_K6(k))));
    EXPECT_EQ(as_ll(mirrored[row]), k);
  }
}

TEST(Coning, AgreesWithGenericMapsModuloFingerMoves) {
  auto d = vk::complexes::skeleton_of_simplex(6, 2);
  vk::linalg::ColumnLattice lattice(vk::vankampen::finger_move_matrix(d));
  for (long long k : {1, 3}) {
    auto coned = coned_van_kampen_vector(d, cone_delta62(d, twisted_K6(k)));
    auto generic = vk::vankampen::van_kampen_vector(d, vk::vankampen::random_generic_map(d, 7));
    for (std::size_t i = 0; i < coned.size(); ++i) generic[i] -= coned[i];
    EXPECT_TRUE(lattice.solve(generic).member);
  }
}

TEST(Coning, BowtieVanishesAndRejectsForeignCells) {
  auto b = vk::complexes::bowtie();
  auto v = coned_van_kampen_vector(b, cone_bowtie(b, twisted_K6(3), twisted_K6(5)));
  EXPECT_EQ(v.size(), vk::vankampen::PairIndex(b).size());
  for (const auto& x : v) EXPECT_EQ(x, 0);
  auto x3 = vk::complexes::complex_Xk(3);
  EXPECT_THROW(cone_bowtie(x3, twisted_K6(3), twisted_K6(3)), vk::InputError);
  auto d = vk::complexes::skeleton_of_simplex(6, 2);
  SpatialGraph half;
  half.add_vertex(point(1, 2, 3));
  EXPECT_THROW(cone_delta62(d, half), vk::InputError);
}
