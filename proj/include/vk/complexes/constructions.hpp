#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "vk/complexes/complex.hpp"
#include "vk/error.hpp"
#include "vk/freegroup/word.hpp"

namespace vk::complexes {

/// All faces of dimension ≤ k of the n-simplex on vertices x0..xn.
inline SimplicialComplex skeleton_of_simplex(int n, int k) {
  if (n < 0 || k < 0 || k > n || k > 2) throw InputError("need 0 <= k <= min(n, 2)");
  SimplicialComplex c;
  for (int v = 0; v <= n; ++v) c.add_vertex("x" + std::to_string(v));
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (k >= 1) c.add_edge(a, b);
      for (int d = b + 1; d <= n && k >= 2; ++d) c.add_triangle(a, b, d);
    }
  return c;
}

/// Two copies of Δ₆² (x0..x6 are ids 0..6, x̂0..x̂6 are ids 7..13) joined by
/// the edge x6x̂6, with the interiors of x4x5x6 and x̂4x̂5x̂6 removed.
/// Loop "gamma" = x4 x5 x6 x̂6 x̂4 x̂5 x̂6 x6, which crosses x6x̂6 twice.
inline SimplicialComplex bowtie() {
  SimplicialComplex c;
  for (int v = 0; v <= 6; ++v) c.add_vertex("x" + std::to_string(v));
  for (int v = 0; v <= 6; ++v) c.add_vertex("x̂" + std::to_string(v));
  for (int off : {0, 7})
    for (int a = 0; a <= 6; ++a)
      for (int b = a + 1; b <= 6; ++b)
        for (int d = b + 1; d <= 6; ++d)
          if (!(a == 4 && b == 5 && d == 6)) c.add_triangle(a + off, b + off, d + off);
  c.add_edge(6, 13);
  c.loops()["gamma"] = {4, 5, 6, 13, 11, 12, 13, 6};
  c.loops()["x456"] = {4, 5, 6};
  c.loops()["x̂456"] = {11, 12, 13};
  for (int off : {0, 7}) {
    auto& k6 = c.subcomplexes()[off ? "K6hat" : "K6"];
    for (int a = 1; a <= 6; ++a)
      for (int b = a + 1; b <= 6; ++b) k6.push_back({a + off, b + off});
  }
  return c;
}

/// Disjoint union; returns the id offset of b's vertices. b's tags are
/// copied with `prefix` prepended to their names.
inline int disjoint_union_into(SimplicialComplex& a, const SimplicialComplex& b, const std::string& prefix = "") {
  const int off = static_cast<int>(a.vertex_count());
  for (std::size_t v = 0; v < b.vertex_count(); ++v) a.add_vertex(b.label(static_cast<int>(v)));
  for (const Edge& e : b.edges()) a.add_edge(e[0] + off, e[1] + off);
  for (const Triangle& t : b.triangles()) a.add_triangle(t[0] + off, t[1] + off, t[2] + off);
  for (const auto& [name, loop] : b.loops()) {
    auto& dst = a.loops()[prefix + name];
    dst.clear();
    for (int v : loop) dst.push_back(v + off);
  }
  for (const auto& [name, simplices] : b.subcomplexes()) {
    auto& dst = a.subcomplexes()[prefix + name];
    for (auto s : simplices) {
      for (int& v : s) v += off;
      dst.push_back(s);
    }
  }
  return off;
}

/// P_k minus an open disk: the mapping cylinder of the degree-k cover of an
/// m-gon α by a (k·m)-gon β. Vertices a0..a(m-1) form α; u0..u(km-1) form β,
/// the boundary. All triangles are tagged "piece".
inline SimplicialComplex pk_minus_disk(int k, int m = 3) {
  if (k < 1) throw InputError("P_k needs k >= 1");
  if (m < 3) throw InputError("singular circle needs at least 3 edges");
  SimplicialComplex c;
  for (int i = 0; i < m; ++i) c.add_vertex("a" + std::to_string(i));
  const int n = k * m;
  for (int i = 0; i < n; ++i) c.add_vertex("u" + std::to_string(i));
  auto a = [m](int i) { return ((i % m) + m) % m; };
  auto u = [m, n](int i) { return m + ((i % n) + n) % n; };
  auto& piece = c.subcomplexes()["piece"];
  for (int i = 0; i < n; ++i) {
    c.add_triangle(u(i), a(i), a(i + 1));
    c.add_triangle(u(i), u(i + 1), a(i + 1));
    piece.push_back({u(i), a(i), a(i + 1)});
    piece.push_back({u(i), u(i + 1), a(i + 1)});
  }
  auto& alpha = c.loops()["alpha"];
  for (int i = 0; i < m; ++i) alpha.push_back(a(i));
  auto& beta = c.loops()["beta"];
  for (int i = 0; i < n; ++i) beta.push_back(u(i));
  return c;
}

/// P_k: pk_minus_disk with the boundary coned off to a centre vertex "c".
inline SimplicialComplex pseudo_projective_plane(int k, int m = 3) {
  SimplicialComplex c = pk_minus_disk(k, m);
  const auto beta = c.loop("beta");
  const int centre = c.add_vertex("c");
  auto& piece = c.subcomplexes()["piece"];
  for (std::size_t i = 0; i < beta.size(); ++i) {
    int x = beta[i], y = beta[(i + 1) % beta.size()];
    c.add_triangle(x, y, centre);
    piece.push_back({x, y, centre});
  }
  c.loops().erase("beta");
  return c;
}

/// Glues `piece` to `base` by identifying the loop piece_boundary with the
/// closed edge path `target` of base. A collar annulus over the target path
/// keeps the result simplicial when the path repeats vertices; the collar's
/// free ring is then zipped to piece_boundary by a strip of triangles. The
/// piece's tags are carried over with prefix "piece_" except "piece", which
/// collects every new triangle.
inline SimplicialComplex attach_along_loop(const SimplicialComplex& base, const std::vector<int>& target,
                                           const SimplicialComplex& piece, const std::vector<int>& piece_boundary) {
  const std::size_t L = target.size(), M = piece_boundary.size();
  if (L < 3 || M < 3) throw InputError("attaching loops need length >= 3");
  for (std::size_t i = 0; i < L; ++i)
    if (!base.has_edge(target[i], target[(i + 1) % L])) throw InputError("target path is not an edge path of the base");
  for (std::size_t i = 0; i < M; ++i)
    if (!piece.has_edge(piece_boundary[i], piece_boundary[(i + 1) % M])) throw InputError("piece boundary is not a loop of the piece");

  SimplicialComplex out = base;
  std::vector<std::vector<int>> new_triangles;
  auto tri = [&](int a, int b, int c) {
    out.add_triangle(a, b, c);
    new_triangles.push_back({a, b, c});
  };

  // collar ring d_i over target vertex t_i
  std::vector<int> d(L);
  for (std::size_t i = 0; i < L; ++i) d[i] = out.add_vertex("d" + std::to_string(i));
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t j = (i + 1) % L;
    tri(target[i], target[j], d[i]);
    tri(d[i], d[j], target[j]);
  }

  SimplicialComplex p = piece;
  p.subcomplexes().erase("piece");
  const int off = disjoint_union_into(out, p, "piece_");
  std::vector<int> b(M);
  for (std::size_t i = 0; i < M; ++i) b[i] = piece_boundary[i] + off;
  for (const Triangle& t : piece.triangles()) new_triangles.push_back({t[0] + off, t[1] + off, t[2] + off});

  // zipper: walk both rings once, advancing the one that is proportionally behind
  std::size_t i = 0, j = 0;
  while (i < L || j < M) {
    bool step_d = j == M || (i < L && (i + 1) * M <= (j + 1) * L);
    if (step_d) {
      tri(d[i], d[(i + 1) % L], b[j % M]);
      ++i;
    } else {
      tri(b[j], b[(j + 1) % M], d[i % L]);
      ++j;
    }
  }

  auto& tag = out.subcomplexes()["piece"];
  for (auto& t : new_triangles) {
    std::sort(t.begin(), t.end());
    tag.push_back(t);
  }
  out.loops()["collar"] = d;
  out.validate();
  return out;
}

/// X_k = bowtie ∪ (P_k − D²) along gamma.
inline SimplicialComplex complex_Xk(int k, int m = 3) {
  SimplicialComplex piece = pk_minus_disk(k, m);
  SimplicialComplex b = bowtie();
  SimplicialComplex x = attach_along_loop(b, b.loop("gamma"), piece, piece.loop("beta"));
  return x;
}

/// Edge path of a word in g1 = x4x5x6 and g2 = x̂4x̂5x̂6, both read from x6
/// (g2 runs out and back along the base interval x6x̂6).
inline std::vector<int> fkt_path(const freegroup::FreeWord& w) {
  if (w.generator_bound() > 2) throw InputError("FKT words use two generators");
  static const std::vector<int> g[2][2] = {{{6, 4, 5}, {6, 5, 4}}, {{6, 13, 11, 12, 13}, {6, 13, 12, 11, 13}}};
  std::vector<int> path;
  for (int l : w.letters()) {
    const auto& seg = g[std::abs(l) - 1][l > 0 ? 0 : 1];
    path.insert(path.end(), seg.begin(), seg.end());
  }
  return path;
}

/// The complex of a word w in the commutator subgroup: bowtie with a cone
/// disk attached along w(x4x5x6, x̂4x̂5x̂6).
inline SimplicialComplex complex_FKT(const freegroup::FreeWord& w) {
  if (w.empty()) throw InputError("FKT word must be nontrivial");
  if (w.exponent_sum(0) != 0 || w.exponent_sum(1) != 0)
    throw InputError("FKT word must lie in the commutator subgroup (zero exponent sums)");
  std::vector<int> path = fkt_path(w);
  SimplicialComplex disk;
  std::vector<int> ring;
  for (std::size_t i = 0; i < path.size(); ++i) ring.push_back(disk.add_vertex("e" + std::to_string(i)));
  const int centre = disk.add_vertex("ec");
  for (std::size_t i = 0; i < ring.size(); ++i) disk.add_triangle(ring[i], ring[(i + 1) % ring.size()], centre);
  SimplicialComplex b = bowtie();
  SimplicialComplex out = attach_along_loop(b, path, disk, ring);
  out.loops()["attaching"] = path;
  out.validate();
  return out;
}

}  // namespace vk::complexes
