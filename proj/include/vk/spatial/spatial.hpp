#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vk/error.hpp"
#include "vk/graph.hpp"
#include "vk/linalg/bigint.hpp"
#include "vk/random.hpp"

namespace vk::spatial {

using linalg::BigInt;
using linalg::BigRat;
using Point3 = std::array<BigRat, 3>;
using Polyline = std::vector<Point3>;  // closed when used as a loop

inline Point3 point(long long x, long long y, long long z) {
  return {BigRat(linalg::big(x)), BigRat(linalg::big(y)), BigRat(linalg::big(z))};
}
inline Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point3 add(const Point3& a, const Point3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point3 scale(const Point3& a, const BigRat& t) { return {a[0] * t, a[1] * t, a[2] * t}; }
inline BigRat dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Point3 lerp(const Point3& a, const Point3& b, const BigRat& t) { return add(a, scale(sub(b, a), t)); }
inline bool is_zero(const Point3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

struct SpatialEdge {
  int u = 0, v = 0;
  std::vector<Point3> waypoints;  // interior points, in order from u to v
};

/// A graph with a PL embedding in ℚ³: vertex points plus one polyline per edge.
class SpatialGraph {
 public:
  int add_vertex(const Point3& p, std::string label = {}) {
    points_.push_back(p);
    labels_.push_back(std::move(label));
    return static_cast<int>(points_.size()) - 1;
  }
  void add_edge(int u, int v, std::vector<Point3> waypoints = {}) {
    check(u);
    check(v);
    if (u == v) throw InputError("spatial graph loops are not allowed");
    if (find(u, v) >= 0) throw InputError("duplicate spatial edge");
    edges_.push_back({u, v, std::move(waypoints)});
  }

  std::size_t vertex_count() const { return points_.size(); }
  const std::vector<SpatialEdge>& edges() const { return edges_; }
  std::vector<SpatialEdge>& edges() { return edges_; }
  const Point3& point_of(int v) const { return points_.at(static_cast<std::size_t>(v)); }
  void set_point(int v, const Point3& p) { points_.at(static_cast<std::size_t>(v)) = p; }
  const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }

  /// Index of the edge {u, v}, or -1.
  int find(int u, int v) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if ((edges_[i].u == u && edges_[i].v == v) || (edges_[i].u == v && edges_[i].v == u)) return static_cast<int>(i);
    return -1;
  }

  /// Points of the edge from `from` to the other end, both endpoints included.
  Polyline edge_path(int from, int to) const {
    int i = find(from, to);
    if (i < 0) throw InputError("no edge " + std::to_string(from) + "-" + std::to_string(to));
    const auto& e = edges_[static_cast<std::size_t>(i)];
    Polyline p{point_of(e.u)};
    p.insert(p.end(), e.waypoints.begin(), e.waypoints.end());
    p.push_back(point_of(e.v));
    if (e.u != from) std::reverse(p.begin(), p.end());
    return p;
  }

  /// Closed polyline of a cycle given by its vertex sequence.
  Polyline cycle_polyline(const std::vector<int>& cycle) const {
    if (cycle.size() < 3) throw InputError("cycle needs at least 3 vertices");
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) throw InputError("cycle repeats a vertex");
    Polyline out;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      auto seg = edge_path(cycle[i], cycle[(i + 1) % cycle.size()]);
      out.insert(out.end(), seg.begin(), seg.end() - 1);
    }
    return out;
  }

  Graph graph() const {
    Graph g(points_.size());
    for (const auto& e : edges_) g.add_edge(e.u, e.v);
    return g;
  }

  /// Every polyline segment of every edge.
  std::vector<std::pair<Point3, Point3>> segments() const {
    std::vector<std::pair<Point3, Point3>> out;
    for (const auto& e : edges_) {
      auto p = edge_path(e.u, e.v);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) out.emplace_back(p[i], p[i + 1]);
    }
    return out;
  }

  /// Vertex and waypoint positions must all be distinct.
  void validate_points() const {
    std::set<Point3> seen;
    for (const auto& p : points_)
      if (!seen.insert(p).second) throw InputError("two spatial vertices share a position");
    for (const auto& e : edges_)
      for (const auto& w : e.waypoints)
        if (!seen.insert(w).second) throw InputError("a waypoint repeats another point");
  }

 private:
  void check(int v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= points_.size()) throw InputError("spatial vertex out of range");
  }
  std::vector<Point3> points_;
  std::vector<std::string> labels_;
  std::vector<SpatialEdge> edges_;
};

/// Orthographic projection along d: plane coordinates (x·u, x·w) and height
/// x·d, with (u, w, d) right-handed so the viewer sits at +d.
struct Projection {
  Point3 d, u, w;

  explicit Projection(const Point3& dir) : d(dir) {
    if (is_zero(d)) throw InputError("projection direction must be nonzero");
    for (int k = 0; k < 3; ++k) {
      Point3 e{BigRat(0), BigRat(0), BigRat(0)};
      e[static_cast<std::size_t>(k)] = 1;
      u = cross(d, e);
      if (!is_zero(u)) break;
    }
    w = cross(d, u);
  }
  std::array<BigRat, 2> plane(const Point3& x) const { return {dot(x, u), dot(x, w)}; }
  BigRat height(const Point3& x) const { return dot(x, d); }
};

inline BigRat cross2(const std::array<BigRat, 2>& a, const std::array<BigRat, 2>& b) { return a[0] * b[1] - a[1] * b[0]; }

struct Crossing {
  std::size_t over = 0, under = 0;  // segment indices
  int sign = 0;                      // sign of cross2(over direction, under direction)
  std::array<BigRat, 2> at;
};

struct DiagramReport {
  bool ok = true;
  std::string problem;
  std::vector<Crossing> crossings;
};

/// Projects the segments along d and finds every crossing exactly. Fails on
/// segments parallel to d, crossings through a projected endpoint,
/// overlapping projected segments, triple points and segments meeting in
/// space. Segments sharing an endpoint are treated as adjacent.
inline DiagramReport project_segments(const std::vector<std::pair<Point3, Point3>>& segs, const Point3& dir) {
  Projection pr(dir);
  DiagramReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.problem = std::move(why);
    rep.crossings.clear();
    return rep;
  };
  struct S {
    std::array<BigRat, 2> p0, p1, r;
    BigRat h0, h1;
  };
  std::vector<S> s(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (is_zero(cross(sub(segs[i].second, segs[i].first), pr.d))) return fail("a segment is parallel to the projection direction");
    s[i].p0 = pr.plane(segs[i].first);
    s[i].p1 = pr.plane(segs[i].second);
    s[i].r = {s[i].p1[0] - s[i].p0[0], s[i].p1[1] - s[i].p0[1]};
    s[i].h0 = pr.height(segs[i].first);
    s[i].h1 = pr.height(segs[i].second);
  }
  std::set<std::array<BigRat, 2>> points;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto& a = s[i];
      const auto& b = s[j];
      const BigRat den = cross2(a.r, b.r);
      const std::array<BigRat, 2> q{b.p0[0] - a.p0[0], b.p0[1] - a.p0[1]};
      const Point3* shared = nullptr;
      const auto& A = segs[i];
      const auto& B = segs[j];
      if (A.first == B.first || A.first == B.second) shared = &A.first;
      if (A.second == B.first || A.second == B.second) {
        if (shared) return fail("two segments share both endpoints");
        shared = &A.second;
      }
      if (shared) {
        if (den != 0) continue;
        // collinear adjacent segments must leave the shared point in opposite directions
        auto away = [&](const std::pair<Point3, Point3>& seg) {
          return sub(seg.first == *shared ? seg.second : seg.first, *shared);
        };
        auto pa = pr.plane(away(A)), pb = pr.plane(away(B));
        if (pa[0] * pb[0] + pa[1] * pb[1] > 0) return fail("adjacent segments overlap in projection");
        continue;
      }
      if (den == 0) {
        if (cross2(q, a.r) != 0) continue;
        BigRat rr = a.r[0] * a.r[0] + a.r[1] * a.r[1];
        BigRat t0 = (q[0] * a.r[0] + q[1] * a.r[1]) / rr;
        BigRat t1 = ((b.p1[0] - a.p0[0]) * a.r[0] + (b.p1[1] - a.p0[1]) * a.r[1]) / rr;
        if (std::max(t0, t1) >= 0 && std::min(t0, t1) <= 1) return fail("projected segments overlap");
        continue;
      }
      const BigRat ta = cross2(q, b.r) / den, tb = cross2(q, a.r) / den;
      if (ta < 0 || ta > 1 || tb < 0 || tb > 1) continue;
      if (ta == 0 || ta == 1 || tb == 0 || tb == 1) return fail("a crossing passes through a projected vertex");
      const BigRat ha = a.h0 + ta * (a.h1 - a.h0), hb = b.h0 + tb * (b.h1 - b.h0);
      if (ha == hb) return fail("two segments meet in space");
      std::array<BigRat, 2> at{a.p0[0] + ta * a.r[0], a.p0[1] + ta * a.r[1]};
      if (!points.insert(at).second) return fail("three segments cross at one projected point");
      Crossing c;
      c.over = ha > hb ? i : j;
      c.under = ha > hb ? j : i;
      c.sign = sgn(cross2(s[c.over].r, s[c.under].r));
      c.at = at;
      rep.crossings.push_back(std::move(c));
    }
  return rep;
}

inline std::vector<std::pair<Point3, Point3>> loop_segments(const Polyline& p) {
  std::vector<std::pair<Point3, Point3>> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.emplace_back(p[i], p[(i + 1) % p.size()]);
  return out;
}

/// Checks the whole embedded graph against direction d.
inline DiagramReport validate_projection(const SpatialGraph& g, const Point3& d) {
  g.validate_points();
  return project_segments(g.segments(), d);
}

/// Deterministic candidate directions with small integer entries.
inline std::vector<Point3> candidate_directions(std::size_t n, std::uint64_t seed = 0) {
  Rng rng(seed, "projection");
  std::vector<Point3> out;
  while (out.size() < n) {
    Point3 d = point(rng.uniform(-97, 97), rng.uniform(-97, 97), rng.uniform(-97, 97));
    if (!is_zero(d)) out.push_back(d);
  }
  return out;
}

/// Lk(P, Q) from a diagram along d: half the signed count of P–Q crossings.
/// Returns nullopt when the diagram of P ∪ Q is degenerate.
inline std::optional<BigInt> linking_number_along(const Polyline& P, const Polyline& Q, const Point3& d) {
  auto segs = loop_segments(P);
  const std::size_t np = segs.size();
  for (auto& s : loop_segments(Q)) segs.push_back(s);
  for (const auto& a : P)
    for (const auto& b : Q)
      if (a == b) throw InputError("loops are not disjoint");
  auto rep = project_segments(segs, d);
  if (!rep.ok) return std::nullopt;
  long long total = 0;
  for (const auto& c : rep.crossings)
    if ((c.over < np) != (c.under < np)) total += c.sign;
  if (total % 2 != 0) throw InvariantViolation("odd crossing sum between two closed loops");
  return linalg::big(total / 2);
}

/// Lk along the first valid candidate direction.
inline BigInt linking_number(const Polyline& P, const Polyline& Q, std::uint64_t seed = 0) {
  for (const auto& d : candidate_directions(64, seed))
    if (auto lk = linking_number_along(P, Q, d)) return *lk;
  throw GeneralPositionError("no generic projection direction among 64 candidates");
}

inline void check_disjoint_cycles(const std::vector<int>& c1, const std::vector<int>& c2) {
  for (int a : c1)
    for (int b : c2)
      if (a == b) throw InputError("cycles are not vertex-disjoint");
}

inline BigInt linking_number(const SpatialGraph& g, const std::vector<int>& c1, const std::vector<int>& c2,
                             std::uint64_t seed = 0) {
  check_disjoint_cycles(c1, c2);
  return linking_number(g.cycle_polyline(c1), g.cycle_polyline(c2), seed);
}

/// Recomputes Lk along `count` independent valid directions and throws if they disagree.
inline BigInt linking_number_checked(const SpatialGraph& g, const std::vector<int>& c1, const std::vector<int>& c2,
                                     std::size_t count = 5) {
  check_disjoint_cycles(c1, c2);
  auto P = g.cycle_polyline(c1), Q = g.cycle_polyline(c2);
  std::optional<BigInt> first;
  std::size_t used = 0;
  for (const auto& d : candidate_directions(64 + count, 17)) {
    auto lk = linking_number_along(P, Q, d);
    if (!lk) continue;
    if (first && *first != *lk) throw InvariantViolation("linking number depends on the projection");
    first = lk;
    if (++used == count) return *first;
  }
  throw GeneralPositionError("not enough generic projection directions");
}

using CyclePair = std::pair<std::vector<int>, std::vector<int>>;

inline bool is_complete_on_six(const Graph& g) {
  if (g.size() != 6) return false;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (!g.has_edge(a, b)) return false;
  return g.edge_count() == 15;
}

/// The 10 unordered pairs of vertex-disjoint 3-cycles of K₆, each cycle
/// increasing, the one containing vertex 0 first.
inline std::vector<CyclePair> disjoint_cycle_pairs(const Graph& g) {
  if (!is_complete_on_six(g)) throw InputError("graph is not K6");
  std::vector<CyclePair> out;
  for (int b = 1; b < 6; ++b)
    for (int c = b + 1; c < 6; ++c) {
      std::vector<int> t1{0, b, c}, t2;
      for (int v = 1; v < 6; ++v)
        if (v != b && v != c) t2.push_back(v);
      out.emplace_back(t1, t2);
    }
  return out;
}

struct Omega {
  BigInt sum;
  int mod2 = 0;
  std::vector<BigInt> linking;  // in disjoint_cycle_pairs order
};

inline Omega conway_gordon_omega(const SpatialGraph& g, std::uint64_t seed = 0) {
  Omega out;
  for (const auto& [c1, c2] : disjoint_cycle_pairs(g.graph())) {
    out.linking.push_back(linking_number(g, c1, c2, seed));
    out.sum += out.linking.back();
  }
  BigInt r = out.sum % 2;
  out.mod2 = r == 0 ? 0 : 1;
  return out;
}

/// Straight-line K₆ on random integer points of [−range, range]³ with no four
/// coplanar, which makes the edges pairwise disjoint away from shared vertices.
inline SpatialGraph random_straight_K6(std::uint64_t seed, long long range = 100) {
  Rng rng(seed, "straight-k6");
  for (;;) {
    std::vector<Point3> p;
    for (int i = 0; i < 6; ++i) p.push_back(point(rng.uniform(-range, range), rng.uniform(-range, range), rng.uniform(-range, range)));
    bool ok = true;
    for (int a = 0; a < 6 && ok; ++a)
      for (int b = a + 1; b < 6 && ok; ++b)
        for (int c = b + 1; c < 6 && ok; ++c)
          for (int d = c + 1; d < 6 && ok; ++d)
            ok = dot(cross(sub(p[b], p[a]), sub(p[c], p[a])), sub(p[d], p[a])) != 0;
    if (!ok) continue;
    SpatialGraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(p[static_cast<std::size_t>(i)], "x" + std::to_string(i + 1));
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) g.add_edge(a, b);
    return g;
  }
}

/// Reflection z ↦ −z of every point; negates all linking numbers.
inline SpatialGraph mirror(const SpatialGraph& g) {
  SpatialGraph out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Point3 p = g.point_of(static_cast<int>(v));
    p[2] = -p[2];
    out.add_vertex(p, g.label(static_cast<int>(v)));
  }
  for (const auto& e : g.edges()) {
    auto w = e.waypoints;
    for (auto& x : w) x[2] = -x[2];
    out.add_edge(e.u, e.v, w);
  }
  return out;
}

/// Switches one crossing of the diagram along d where edge `over_edge`
/// passes over edge `under_edge`: a waypoint detour pushes the over strand
/// below the other near the crossing. Returns the modified graph.
inline SpatialGraph crossing_change(const SpatialGraph& g, int over_edge, int under_edge, const Point3& d) {
  auto segs = g.segments();
  std::vector<std::pair<int, std::size_t>> owner;  // (edge, segment index within the edge)
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    for (std::size_t k = 0; k <= g.edges()[e].waypoints.size(); ++k) owner.emplace_back(static_cast<int>(e), k);
  auto rep = project_segments(segs, d);
  if (!rep.ok) throw GeneralPositionError(rep.problem);
  for (const auto& c : rep.crossings) {
    if (owner[c.over].first != over_edge || owner[c.under].first != under_edge) continue;
    Projection pr(d);
    const auto& [A0, A1] = segs[c.over];
    const auto& [B0, B1] = segs[c.under];
    auto pa0 = pr.plane(A0), pa1 = pr.plane(A1);
    auto pb0 = pr.plane(B0), pb1 = pr.plane(B1);
    std::array<BigRat, 2> ra{pa1[0] - pa0[0], pa1[1] - pa0[1]}, rb{pb1[0] - pb0[0], pb1[1] - pb0[1]};
    std::array<BigRat, 2> q{pb0[0] - pa0[0], pb0[1] - pa0[1]};
    BigRat den = cross2(ra, rb);
    BigRat ta = cross2(q, rb) / den, tb = cross2(q, ra) / den;
    // a window on the over segment containing no other crossing
    BigRat eps = (ta < 1 - ta ? ta : BigRat(1 - ta)) / 2;
    for (const auto& o : rep.crossings) {
      std::size_t other = o.over == c.over ? o.under : o.under == c.over ? o.over : segs.size();
      if (other == segs.size() || &o == &c) continue;
      auto po0 = pr.plane(segs[other].first), po1 = pr.plane(segs[other].second);
      std::array<BigRat, 2> ro{po1[0] - po0[0], po1[1] - po0[1]}, qo{po0[0] - pa0[0], po0[1] - pa0[1]};
      BigRat t = cross2(qo, ro) / cross2(ra, ro);
      BigRat gap = abs(BigRat(t - ta)) / 2;
      if (gap < eps) eps = gap;
    }
    const BigRat hB = pr.height(lerp(B0, B1, tb));
    const Point3 before = lerp(A0, A1, ta - eps), after = lerp(A0, A1, ta + eps);
    const Point3 mid = lerp(A0, A1, ta + eps / 2);
    // the detour passes the under strand 2/3 of the way from `before` to `low`, one unit below it
    const BigRat h1 = pr.height(before);
    const BigRat target = h1 + BigRat(3, 2) * (hB - 1 - h1);
    const Point3 low = sub(mid, scale(d, (pr.height(mid) - target) / dot(d, d)));
    SpatialGraph out = g;
    auto& wp = out.edges()[static_cast<std::size_t>(over_edge)].waypoints;
    const std::size_t k = owner[c.over].second;
    wp.insert(wp.begin() + static_cast<std::ptrdiff_t>(k), {before, low, after});
    auto check = validate_projection(out, d);
    if (!check.ok) throw GeneralPositionError("crossing change produced a degenerate diagram: " + check.problem);
    return out;
  }
  throw InputError("no crossing of the requested edges in this projection");
}

inline std::string rat_string(const BigRat& q) { return q.get_str(); }

/// {"vertices":[{"id":0,"label":"x1","point":["1","-2/3","0"]}],
///  "edges":[{"u":0,"v":1,"waypoints":[["1/2","0","4"]]}]}
inline nlohmann::json to_json(const SpatialGraph& g) {
  auto pt = [](const Point3& p) { return nlohmann::json{rat_string(p[0]), rat_string(p[1]), rat_string(p[2])}; };
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    nlohmann::json vj{{"id", v}, {"point", pt(g.point_of(static_cast<int>(v)))}};
    if (!g.label(static_cast<int>(v)).empty()) vj["label"] = g.label(static_cast<int>(v));
    j["vertices"].push_back(vj);
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& p : e.waypoints) w.push_back(pt(p));
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"waypoints", w}});
  }
  return j;
}

inline SpatialGraph spatial_from_json(const nlohmann::json& j) {
  try {
    auto pt = [](const nlohmann::json& a) {
      if (!a.is_array() || a.size() != 3) throw InputError("a point needs three coordinates");
      Point3 p;
      for (std::size_t i = 0; i < 3; ++i)
        p[i] = a[i].is_string() ? linalg::parse_rational(a[i].get<std::string>()) : BigRat(linalg::big(a[i].get<long long>()));
      return p;
    };
    SpatialGraph g;
    std::vector<std::pair<long long, nlohmann::json>> vs;
    for (const auto& v : j.at("vertices")) vs.emplace_back(v.at("id").get<long long>(), v);
    std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].first != static_cast<long long>(i)) throw InputError("vertex ids must be 0..n-1");
      g.add_vertex(pt(vs[i].second.at("point")), vs[i].second.value("label", ""));
    }
    for (const auto& e : j.at("edges")) {
      std::vector<Point3> w;
      if (e.contains("waypoints"))
        for (const auto& p : e.at("waypoints")) w.push_back(pt(p));
      g.add_edge(e.at("u").get<int>(), e.at("v").get<int>(), w);
    }
    g.validate_points();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed spatial graph JSON: ") + e.what());
  }
}

}  // namespace vk::spatial
