#pragma once

#include <array>
#include <cstdlib>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/spatial/spatial.hpp"

namespace vk::spatial {

namespace detail {

inline BigRat max_abs(const Point3& p) {
  BigRat m = 0;
  for (const auto& x : p)
    if (abs(x) > m) m = abs(x);
  return m;
}

inline Point3 round_point(const Point3& p) {
  Point3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    BigInt q = linalg::floor_div(p[i].get_num() * 2 + p[i].get_den(), p[i].get_den() * 2);
    out[i] = BigRat(q);
  }
  return out;
}

/// Integer vector along v with max-norm about `len`.
inline Point3 resized(const Point3& v, long long len) {
  return round_point(scale(v, BigRat(linalg::big(len)) / max_abs(v)));
}

/// Index of the longest segment of the edge's polyline (path order u → v).
inline std::size_t longest_segment(const SpatialGraph& g, int edge) {
  const auto& e = g.edges().at(static_cast<std::size_t>(edge));
  auto p = g.edge_path(e.u, e.v);
  std::size_t best = 0;
  BigRat len = -1;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    BigRat l = dot(sub(p[i + 1], p[i]), sub(p[i + 1], p[i]));
    if (l > len) {
      len = l;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

/// Reroutes edge `host` through a thin finger that winds `turns` times
/// around edge `target` (negative turns wind the other way). The finger
/// leaves the host near parameter `at` of its longest segment and wraps
/// `target` near parameter `around` of that edge's longest segment. All new
/// points are integers; `radius` sets the size of the winding.
inline SpatialGraph add_meridian(const SpatialGraph& g, int host, int target, int turns, const BigRat& at,
                                 const BigRat& around, long long radius = 12) {
  if (host == target) throw InputError("a meridian needs two different edges");
  if (turns == 0) return g;
  const auto& he = g.edges().at(static_cast<std::size_t>(host));
  const auto& te = g.edges().at(static_cast<std::size_t>(target));
  const std::size_t hk = detail::longest_segment(g, host), tk = detail::longest_segment(g, target);
  const auto hp = g.edge_path(he.u, he.v), tp = g.edge_path(te.u, te.v);
  const Point3 hdir = sub(hp[hk + 1], hp[hk]), tdir = sub(tp[tk + 1], tp[tk]);

  const Point3 p = detail::round_point(lerp(hp[hk], hp[hk + 1], at));
  const Point3 p2 = add(p, detail::resized(hdir, 3));
  const Point3 m = detail::round_point(lerp(tp[tk], tp[tk + 1], around));
  Point3 axis = point(1, 0, 0);
  if (abs(tdir[1]) <= abs(tdir[0]) && abs(tdir[1]) <= abs(tdir[2])) axis = point(0, 1, 0);
  if (abs(tdir[2]) <= abs(tdir[0]) && abs(tdir[2]) <= abs(tdir[1])) axis = point(0, 0, 1);
  const Point3 u = detail::resized(cross(tdir, axis), radius);
  const Point3 w = detail::resized(cross(tdir, u), radius);
  const BigRat unit = 1 / detail::max_abs(tdir);
  const Point3 ring[4] = {u, w, scale(u, -1), scale(w, -1)};

  std::vector<Point3> finger{p};
  const int n = 4 * std::abs(turns);
  for (int j = 0; j <= n; ++j) {
    const Point3& c = ring[turns > 0 ? j % 4 : (4 - j % 4) % 4];
    // a unit of skew per corner keeps successive windings and sides non-parallel
    Point3 skew = point(j % 3 == 0, j % 3 == 1, j % 3 == 2);
    // rounding the axis point itself (not a rounded step) keeps long helices centred
    const Point3 centre = detail::round_point(add(m, scale(tdir, unit * j)));
    finger.push_back(add(add(centre, c), skew));
  }
  finger.push_back(p2);

  SpatialGraph out = g;
  auto& wp = out.edges()[static_cast<std::size_t>(host)].waypoints;
  wp.insert(wp.begin() + static_cast<std::ptrdiff_t>(hk), finger.begin(), finger.end());
  out.validate_points();
  return out;
}

/// Straight-line K₆ whose only linked pair of disjoint triangles is
/// (x1x2x3, x4x5x6), with linking number +1.
inline SpatialGraph base_K6() {
  static const long long pts[6][3] = {{44, 0, -12}, {59, -55, -45}, {-52, 24, 12},
                                      {-22, -21, -44}, {4, -29, 19}, {-10, 37, 40}};
  SpatialGraph g;
  for (int i = 0; i < 6; ++i)
    g.add_vertex(point(20 * pts[i][0], 20 * pts[i][1], 20 * pts[i][2]), "x" + std::to_string(i + 1));
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) g.add_edge(a, b);
  return g;
}

/// Linking profile of an embedded K₆ in disjoint_cycle_pairs order.
inline std::vector<BigInt> linking_profile(const SpatialGraph& g) { return conway_gordon_omega(g).linking; }

/// K₆ with Lk(x1x2x3, x4x5x6) = k and every other disjoint pair unlinked.
/// k must be odd: ω = Σ Lk is odd for every embedding. Built from base_K6
/// by three fingers (x4x5 around x1x2, x3x4 around x1x6, x5x6 around x2x3),
/// each wound (k−1)/2 times, then mirrored for negative k. The profile is
/// re-verified before returning.
inline SpatialGraph twisted_K6(long long k) {
  if (k % 2 == 0) throw InputError("twisted_K6 needs odd k: the Conway-Gordon sum of linking numbers is always odd");
  if (k < 0) {
    SpatialGraph m = mirror(twisted_K6(-k));
    auto prof = linking_profile(m);
    if (prof[0] != linalg::big(k)) throw InvariantViolation("mirrored twisted K6 has the wrong linking profile");
    return m;
  }
  SpatialGraph g = base_K6();
  const int t = static_cast<int>((k - 1) / 2);
  if (t > 0) {
    g = add_meridian(g, g.find(3, 4), g.find(0, 1), t, BigRat(1, 2), BigRat(1, 2));
    g = add_meridian(g, g.find(2, 3), g.find(0, 5), t, BigRat(1, 2), BigRat(1, 2));
    g = add_meridian(g, g.find(4, 5), g.find(1, 2), t, BigRat(1, 2), BigRat(1, 2));
  }
  auto prof = linking_profile(g);
  bool ok = prof[0] == linalg::big(k);
  for (std::size_t i = 1; i < prof.size(); ++i) ok = ok && prof[i] == 0;
  if (!ok) throw InvariantViolation("twisted K6 construction missed its linking profile");
  return g;
}

}  // namespace vk::spatial
