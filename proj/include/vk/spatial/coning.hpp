#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/random.hpp"
#include "vk/spatial/spatial.hpp"
#include "vk/vankampen/vankampen.hpp"

namespace vk::spatial {

using complexes::SimplicialComplex;
using complexes::Triangle;
using vankampen::GenericMap4;
using vankampen::Point4;

/// One spatial K₆ sitting in the equator x₄ = 0. `apex` is the complex
/// vertex coned off in the northern half; ring[i] is the complex vertex
/// drawn at spatial vertex i.
struct ConeBlock {
  int apex = -1;
  std::array<int, 6> ring{};
  SpatialGraph graph;
};

/// A PL map of a complex given on a refinement: `pieces` are oriented
/// triangles on the refined vertices, each lying inside the image of the
/// complex triangle `parent[i]` with the parent's increasing-id orientation.
struct ConedMap {
  GenericMap4 map;
  std::vector<std::array<int, 3>> pieces;
  std::vector<Triangle> parent;
};

namespace detail {

inline std::int64_t to_int(const BigRat& q) {
  if (q.get_den() != 1) throw InputError("coning needs integer spatial coordinates");
  if (!q.get_num().fits_slong_p()) throw InputError("spatial coordinate out of range");
  return q.get_num().get_si();
}

inline int permutation_parity(std::array<int, 3> t) {
  int swaps = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) swaps += t[i] > t[j];
  return swaps % 2;
}

}  // namespace detail

/// Builds the cone scheme: every block is translated into its own box of
/// the equator, its apex goes to a point above the box centre, and every
/// triangle of `c` spanned by three ring vertices is filled by a cone from
/// its own point below the box. Triangles of `c` must be of these two kinds;
/// edges outside triangles are ignored. Apex heights and offsets are drawn
/// from `seed` and resampled until the disjoint-parent pieces are generic.
inline ConedMap embed_map_to_R4(const SimplicialComplex& c, const std::vector<ConeBlock>& blocks,
                                std::uint64_t seed = 0, int max_attempts = 16) {
  std::map<int, std::pair<std::size_t, int>> where;  // complex vertex → (block, ring slot or -1 for apex)
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& B = blocks[b];
    if (!is_complete_on_six(B.graph.graph())) throw InputError("cone block needs a spatial K6");
    B.graph.validate_points();
    if (!where.emplace(B.apex, std::pair{b, -1}).second) throw InputError("cone blocks share a vertex");
    for (int i = 0; i < 6; ++i)
      if (!where.emplace(B.ring[static_cast<std::size_t>(i)], std::pair{b, i}).second)
        throw InputError("cone blocks share a vertex");
  }
  for (const auto& [v, _] : where)
    if (v < 0 || v >= static_cast<int>(c.vertex_count())) throw InputError("cone block names a missing vertex");

  // refined vertices: ring vertices, then waypoints per edge, then one cone point per triangle
  std::vector<std::pair<std::size_t, Point3>> equator;
  std::vector<std::array<int, 6>> ring_id(blocks.size());
  std::vector<std::map<std::pair<int, int>, std::vector<int>>> path_id(blocks.size());
  auto add_equator = [&](std::size_t b, const Point3& p) {
    equator.emplace_back(b, p);
    return static_cast<int>(equator.size() - 1);
  };
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& G = blocks[b].graph;
    for (int i = 0; i < 6; ++i) ring_id[b][static_cast<std::size_t>(i)] = add_equator(b, G.point_of(i));
    for (const auto& e : G.edges()) {
      std::vector<int> ids{ring_id[b][static_cast<std::size_t>(e.u)]};
      for (const auto& p : e.waypoints) ids.push_back(add_equator(b, p));
      ids.push_back(ring_id[b][static_cast<std::size_t>(e.v)]);
      path_id[b][{e.u, e.v}] = ids;
      std::reverse(ids.begin(), ids.end());
      path_id[b][{e.v, e.u}] = ids;
    }
  }
  const int equator_count = static_cast<int>(equator.size());

  struct Cone {
    std::size_t block;
    bool north;
  };
  std::vector<Cone> cones;
  ConedMap out;
  for (const auto& t : c.triangle_list()) {
    std::vector<std::pair<std::size_t, int>> w;
    for (int v : t) {
      auto it = where.find(v);
      if (it == where.end()) throw InputError("triangle " + vankampen::detail::describe(t) + " is outside every cone block");
      w.push_back(it->second);
    }
    const std::size_t b = w[0].first;
    if (w[1].first != b || w[2].first != b)
      throw InputError("triangle " + vankampen::detail::describe(t) + " spans two cone blocks");
    const int cone = equator_count + static_cast<int>(cones.size());
    int apex_slot = -1;
    for (int i = 0; i < 3; ++i)
      if (w[static_cast<std::size_t>(i)].second < 0) apex_slot = i;
    std::vector<int> loop;
    if (apex_slot < 0) {
      cones.push_back({b, false});
      for (int i = 0; i < 3; ++i) {
        const auto& p = path_id[b].at({w[static_cast<std::size_t>(i)].second, w[static_cast<std::size_t>((i + 1) % 3)].second});
        loop.insert(loop.end(), p.begin(), p.end() - 1);
      }
      loop.push_back(loop.front());
    } else {
      cones.push_back({b, true});
      // (apex, u, v) as a permutation of the sorted triangle decides the direction along uv
      const int u = (apex_slot + 1) % 3, v = (apex_slot + 2) % 3;
      std::array<int, 3> order{t[static_cast<std::size_t>(apex_slot)], t[static_cast<std::size_t>(u)], t[static_cast<std::size_t>(v)]};
      int a = w[static_cast<std::size_t>(u)].second, z = w[static_cast<std::size_t>(v)].second;
      if (detail::permutation_parity(order)) std::swap(a, z);
      loop = path_id[b].at({a, z});
    }
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
      out.pieces.push_back({cone, loop[i], loop[i + 1]});
      out.parent.push_back(t);
    }
  }

  // only pieces of disjoint parents are ever compared
  const vankampen::PairIndex index(c);
  std::vector<std::vector<std::size_t>> by_parent(index.triangles().size());
  for (std::size_t i = 0; i < out.pieces.size(); ++i) by_parent[index.triangle_index(out.parent[i])].push_back(i);

  Rng rng(seed, "cone-apexes");
  std::string last;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    // a unipotent shear per block keeps linking numbers and breaks parallels between copies
    std::vector<std::array<std::int64_t, 3>> shear(blocks.size());
    for (auto& s : shear)
      for (auto& x : s) x = rng.uniform(-1, 1);
    std::vector<std::array<std::int64_t, 3>> pts;
    for (const auto& [b, p] : equator) {
      const auto x = detail::to_int(p[0]), y = detail::to_int(p[1]), z = detail::to_int(p[2]);
      pts.push_back({x + shear[b][0] * y + shear[b][1] * z, y + shear[b][2] * z, z});
    }
    // boxes laid out left to right along x with a gap of one box width
    struct Box {
      std::array<std::int64_t, 3> lo, hi;
      std::int64_t shift = 0;
    };
    std::vector<Box> boxes(blocks.size());
    for (auto& box : boxes) {
      box.lo.fill(INT64_MAX);
      box.hi.fill(INT64_MIN);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        Box& box = boxes[equator[i].first];
        box.lo[k] = std::min(box.lo[k], pts[i][k]);
        box.hi[k] = std::max(box.hi[k], pts[i][k]);
      }
    std::int64_t cursor = 0;
    for (auto& box : boxes) {
      const std::int64_t width = box.hi[0] - box.lo[0] + 1;
      box.shift = cursor - box.lo[0];
      box.lo[0] += box.shift;
      box.hi[0] += box.shift;
      cursor += 2 * width;
    }
    GenericMap4 f;
    f.seed = seed;
    f.attempts = attempt;
    for (std::size_t i = 0; i < pts.size(); ++i)
      f.points.push_back({pts[i][0] + boxes[equator[i].first].shift, pts[i][1], pts[i][2], 0});
    for (const auto& cone : cones) {
      const Box& box = boxes[cone.block];
      std::int64_t half = INT64_MAX;
      for (std::size_t k = 0; k < 3; ++k) half = std::min(half, (box.hi[k] - box.lo[k]) / 2);
      Point4 p{};
      for (std::size_t k = 0; k < 3; ++k) {
        const std::int64_t mid = (box.lo[k] + box.hi[k]) / 2;
        p[k] = cone.north ? mid : mid + rng.uniform(-half / 2, half / 2);
      }
      const std::int64_t depth = 2 * (half + 1);
      p[3] = cone.north ? rng.uniform(depth, 2 * depth) : -rng.uniform(depth, 2 * depth);
      f.points.push_back(p);
    }
    f.range = 0;
    for (const auto& p : f.points)
      for (auto x : p) f.range = std::max(f.range, x < 0 ? -x : x);
    if (f.range > vankampen::kMaxCoordinate) throw InputError("cone coordinates exceed the supported range");
    try {
      for (const auto& [i, j] : index.pairs())
        for (auto a : by_parent[i])
          for (auto b : by_parent[j]) vankampen::triangle_intersection_sign(f, out.pieces[a], out.pieces[b]);
      out.map = std::move(f);
      return out;
    } catch (const GeneralPositionError& e) {
      last = e.what();
    }
  }
  throw GeneralPositionError("no generic cone apexes found (last failure: " + last + ")");
}

/// V_f of the coned map: for each disjoint pair of complex triangles, the
/// sum of the intersection signs of their pieces.
inline std::vector<BigInt> coned_van_kampen_vector(const SimplicialComplex& c, const ConedMap& m) {
  const vankampen::PairIndex index(c);
  std::vector<std::vector<std::size_t>> by_parent(index.triangles().size());
  for (std::size_t i = 0; i < m.pieces.size(); ++i) by_parent[index.triangle_index(m.parent[i])].push_back(i);
  std::vector<BigInt> v(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    const auto [i, j] = index.pairs()[k];
    long long s = 0;
    for (auto a : by_parent[i])
      for (auto b : by_parent[j]) s += vankampen::triangle_intersection_sign(m.map, m.pieces[a], m.pieces[b]);
    v[k] = linalg::big(s);
  }
  return v;
}

/// Δ₆² (vertices x0..x6) over a spatial K₆ drawn on x1..x6.
inline ConedMap cone_delta62(const SimplicialComplex& delta, const SpatialGraph& k6, std::uint64_t seed = 0) {
  return embed_map_to_R4(delta, {ConeBlock{0, {1, 2, 3, 4, 5, 6}, k6}}, seed);
}

/// The bowtie over two spatial K₆'s, the second drawn on x̂1..x̂6.
inline ConedMap cone_bowtie(const SimplicialComplex& bowtie, const SpatialGraph& k6, const SpatialGraph& k6hat,
                            std::uint64_t seed = 0) {
  return embed_map_to_R4(bowtie, {ConeBlock{0, {1, 2, 3, 4, 5, 6}, k6}, ConeBlock{7, {8, 9, 10, 11, 12, 13}, k6hat}},
                         seed);
}

}  // namespace vk::spatial
