#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "vk/complexes/complex.hpp"
#include "vk/graph.hpp"

namespace vk::complexes {

/// A subcomplex given by its simplices; closed under faces when built by the
/// functions below.
struct Subcomplex {
  std::set<int> vertices;
  std::set<Edge> edges;
  std::set<Triangle> triangles;

  bool empty() const { return vertices.empty() && edges.empty() && triangles.empty(); }
  bool intersects(const Subcomplex& o) const {
    for (int v : vertices)
      if (o.vertices.count(v)) return true;
    return false;
  }
  void add_triangle(const Triangle& t) {
    triangles.insert(t);
    for (const Edge& e : faces(t)) add_edge(e);
  }
  void add_edge(const Edge& e) {
    edges.insert(e);
    vertices.insert(e[0]);
    vertices.insert(e[1]);
  }
};

/// Link of v: a vertex per edge vw, an edge per triangle vwu. Graph names are
/// the complex vertex ids w.
inline Graph vertex_link_graph(const SimplicialComplex& c, int v) {
  Graph g;
  std::map<int, int> idx;
  auto node = [&](int w) {
    auto it = idx.find(w);
    if (it != idx.end()) return it->second;
    int i = g.add_vertex(w);
    idx.emplace(w, i);
    return i;
  };
  for (const Edge& e : c.edges())
    if (e[0] == v || e[1] == v) node(e[0] == v ? e[1] : e[0]);
  for (const Triangle& t : c.triangles()) {
    if (std::find(t.begin(), t.end(), v) == t.end()) continue;
    std::vector<int> o;
    for (int x : t)
      if (x != v) o.push_back(x);
    g.add_edge(node(o[0]), node(o[1]));
  }
  return g;
}

inline std::map<Edge, int> edge_triangle_counts(const SimplicialComplex& c) {
  std::map<Edge, int> n;
  for (const Edge& e : c.edges()) n[e] = 0;
  for (const Triangle& t : c.triangles())
    for (const Edge& e : faces(t)) ++n[e];
  return n;
}

/// Edges not on exactly two triangles, vertices whose link is neither a path
/// nor a cycle, and the faces of both.
inline Subcomplex singular_set(const SimplicialComplex& c) {
  Subcomplex s;
  for (const auto& [e, n] : edge_triangle_counts(c))
    if (n != 2) s.add_edge(e);
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    Graph l = vertex_link_graph(c, static_cast<int>(v));
    if (!l.is_path() && !l.is_cycle()) s.vertices.insert(static_cast<int>(v));
  }
  return s;
}

/// Triangles grouped by adjacency across non-singular edges; each region is a
/// sorted list of triangles, regions ordered by their first triangle.
inline std::vector<std::vector<Triangle>> regular_regions(const SimplicialComplex& c) {
  auto tl = c.triangle_list();
  std::vector<std::size_t> parent(tl.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Subcomplex sing = singular_set(c);
  std::map<Edge, std::vector<std::size_t>> on_edge;
  for (std::size_t i = 0; i < tl.size(); ++i)
    for (const Edge& e : faces(tl[i])) on_edge[e].push_back(i);
  for (const auto& [e, ts] : on_edge)
    if (!sing.edges.count(e))
      for (std::size_t i = 1; i < ts.size(); ++i) parent[find(ts[i])] = find(ts[0]);
  std::map<std::size_t, std::vector<Triangle>> groups;
  for (std::size_t i = 0; i < tl.size(); ++i) groups[find(i)].push_back(tl[i]);
  std::vector<std::vector<Triangle>> out;
  for (auto& [root, ts] : groups) out.push_back(std::move(ts));
  std::sort(out.begin(), out.end());
  return out;
}

/// All simplices containing a vertex of `vs`, together with their faces.
inline Subcomplex closed_star(const SimplicialComplex& c, const std::set<int>& vs) {
  Subcomplex s;
  for (int v : vs) s.vertices.insert(v);
  for (const Edge& e : c.edges())
    if (vs.count(e[0]) || vs.count(e[1])) s.add_edge(e);
  for (const Triangle& t : c.triangles())
    if (vs.count(t[0]) || vs.count(t[1]) || vs.count(t[2])) s.add_triangle(t);
  return s;
}

/// N1(v) = closed star of v; N2(v) = closed star of the vertex set of N1(v).
inline Subcomplex neighborhood(const SimplicialComplex& c, int v, int radius) {
  if (radius < 1 || radius > 2) throw InputError("neighborhood radius must be 1 or 2");
  if (v < 0 || static_cast<std::size_t>(v) >= c.vertex_count()) throw InputError("vertex id out of range");
  Subcomplex n = closed_star(c, {v});
  if (radius == 2) n = closed_star(c, n.vertices);
  return n;
}

/// Edge-path distances from v (-1 when unreachable).
inline std::vector<int> edge_distances(const SimplicialComplex& c, int v) {
  std::vector<std::vector<int>> adj(c.vertex_count());
  for (const Edge& e : c.edges()) {
    adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
    adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
  }
  std::vector<int> d(c.vertex_count(), -1);
  std::vector<int> q{v};
  d[static_cast<std::size_t>(v)] = 0;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (int w : adj[static_cast<std::size_t>(q[h])])
      if (d[static_cast<std::size_t>(w)] < 0) {
        d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(q[h])] + 1;
        q.push_back(w);
      }
  return d;
}

/// Barycentric subdivision. Old vertices keep their ids; edge midpoints and
/// triangle centres are appended. Loops gain their edge midpoints and
/// subcomplex tags are replaced by the subdivided simplices.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& c) {
  SimplicialComplex out;
  auto name = [&](int v) { return c.label(v).empty() ? std::to_string(v) : c.label(v); };
  for (std::size_t v = 0; v < c.vertex_count(); ++v) out.add_vertex(c.label(static_cast<int>(v)));
  std::map<Edge, int> mid;
  for (const Edge& e : c.edges()) {
    int m = out.add_vertex("(" + name(e[0]) + "," + name(e[1]) + ")");
    mid[e] = m;
    out.add_edge(e[0], m);
    out.add_edge(e[1], m);
  }
  std::map<Triangle, std::vector<Triangle>> pieces;
  for (const Triangle& t : c.triangles()) {
    int z = out.add_vertex("(" + name(t[0]) + "," + name(t[1]) + "," + name(t[2]) + ")");
    for (int v : t)
      for (const Edge& e : faces(t))
        if (e[0] == v || e[1] == v) {
          out.add_triangle(v, mid.at(e), z);
          pieces[t].push_back(make_triangle(v, mid.at(e), z));
        }
  }
  for (const auto& [n, loop] : c.loops()) {
    auto& dst = out.loops()[n];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      dst.push_back(loop[i]);
      dst.push_back(mid.at(make_edge(loop[i], loop[(i + 1) % loop.size()])));
    }
  }
  for (const auto& [n, simplices] : c.subcomplexes()) {
    auto& dst = out.subcomplexes()[n];
    for (const auto& s : simplices) {
      if (s.size() == 1) dst.push_back(s);
      if (s.size() == 2) {
        int m = mid.at(make_edge(s[0], s[1]));
        dst.push_back({std::min(s[0], m), std::max(s[0], m)});
        dst.push_back({std::min(s[1], m), std::max(s[1], m)});
      }
      if (s.size() == 3)
        for (const Triangle& t : pieces.at(make_triangle(s[0], s[1], s[2]))) dst.push_back({t[0], t[1], t[2]});
    }
  }
  out.validate();
  return out;
}

/// Stellar subdivision at the centre of every triangle listed in the
/// subcomplex tag `tag`. Edges are untouched, so the rest of the complex is
/// unchanged and the tag is updated to the new triangles.
inline SimplicialComplex stellar_subdivide_tagged(const SimplicialComplex& c, const std::string& tag) {
  auto it = c.subcomplexes().find(tag);
  if (it == c.subcomplexes().end()) throw InputError("no subcomplex tagged " + tag);
  SimplicialComplex out = c;
  std::vector<std::vector<int>> fresh;
  for (const auto& s : it->second) {
    if (s.size() != 3) continue;
    Triangle t = make_triangle(s[0], s[1], s[2]);
    out.remove_triangle(t[0], t[1], t[2]);
    int z = out.add_vertex("s" + std::to_string(out.vertex_count()));
    for (const Edge& e : faces(t)) {
      out.add_triangle(e[0], e[1], z);
      fresh.push_back({e[0], e[1], z});
    }
  }
  out.subcomplexes()[tag] = fresh;
  for (auto& [n, simplices] : out.subcomplexes())
    if (n != tag)
      simplices.erase(std::remove_if(simplices.begin(), simplices.end(),
                                     [&](const std::vector<int>& s) {
                                       return s.size() == 3 && !out.has_triangle(s[0], s[1], s[2]);
                                     }),
                      simplices.end());
  out.validate();
  return out;
}

}  // namespace vk::complexes
