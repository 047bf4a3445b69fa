#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vk/complexes/analysis.hpp"
#include "vk/complexes/complex.hpp"
#include "vk/error.hpp"
#include "vk/graph.hpp"

namespace vk::octa {

using complexes::Edge;
using complexes::SimplicialComplex;
using complexes::Subcomplex;
using complexes::Triangle;

/// Vertex v of L becomes v⁺ = 2v and v⁻ = 2v + 1 in OL.
struct SignedVertex {
  int base = 0;
  bool positive = true;
};

inline int signed_id(const SignedVertex& s) { return 2 * s.base + (s.positive ? 0 : 1); }
inline SignedVertex signed_vertex(int id) {
  if (id < 0) throw InputError("negative signed vertex id");
  return {id / 2, id % 2 == 0};
}

inline SimplicialComplex octahedralize(const SimplicialComplex& L) {
  SimplicialComplex O;
  for (std::size_t v = 0; v < L.vertex_count(); ++v) {
    const std::string& l = L.label(static_cast<int>(v));
    const std::string base = l.empty() ? std::to_string(v) : l;
    O.add_vertex(base + "+");
    O.add_vertex(base + "-");
  }
  for (const Edge& e : L.edges())
    for (int s = 0; s < 4; ++s) O.add_edge(2 * e[0] + (s & 1), 2 * e[1] + (s >> 1 & 1));
  for (const Triangle& t : L.triangles())
    for (int s = 0; s < 8; ++s) O.add_triangle(2 * t[0] + (s & 1), 2 * t[1] + (s >> 1 & 1), 2 * t[2] + (s >> 2 & 1));
  return O;
}

/// Graph version; names of the result are signed ids of the input's names.
inline Graph octahedralize(const Graph& g) {
  Graph O;
  for (std::size_t v = 0; v < g.size(); ++v) {
    O.add_vertex(2 * g.names[v]);
    O.add_vertex(2 * g.names[v] + 1);
  }
  for (const auto& [a, b] : g.edges())
    for (int s = 0; s < 4; ++s) O.add_edge(2 * a + (s & 1), 2 * b + (s >> 1 & 1));
  return O;
}

struct FlagReport {
  bool flag = true;
  std::vector<int> clique;  // a clique of the 1-skeleton spanning no simplex
};

/// A 2-complex is flag when every 3-clique of its 1-skeleton is a triangle
/// and there is no 4-clique (which would need a 3-simplex).
inline FlagReport is_flag(const SimplicialComplex& c) {
  std::vector<std::set<int>> adj(c.vertex_count());
  for (const Edge& e : c.edges()) {
    adj[static_cast<std::size_t>(e[0])].insert(e[1]);
    adj[static_cast<std::size_t>(e[1])].insert(e[0]);
  }
  for (const Edge& e : c.edges())
    for (int w : adj[static_cast<std::size_t>(e[0])])
      if (w > e[1] && adj[static_cast<std::size_t>(e[1])].count(w) && !c.has_triangle(e[0], e[1], w))
        return {false, {e[0], e[1], w}};
  for (const Triangle& t : c.triangles())
    for (int w : adj[static_cast<std::size_t>(t[0])])
      if (w > t[2] && adj[static_cast<std::size_t>(t[1])].count(w) && adj[static_cast<std::size_t>(t[2])].count(w))
        return {false, {t[0], t[1], t[2], w}};
  return {};
}

inline Graph octahedralized_cycle(int n) {
  if (n < 3) throw InputError("a cycle needs n >= 3");
  return octahedralize(Graph::cycle(static_cast<std::size_t>(n)));
}

/// The two sides when g is exactly K₄,₄ (8 vertices, 16 edges, complete
/// bipartite), found by 2-colouring.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> k44_bipartition(const Graph& g) {
  if (g.size() != 8 || g.edge_count() != 16) return std::nullopt;
  std::vector<int> colour(8, -1);
  colour[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      if (colour[static_cast<std::size_t>(w)] < 0) {
        colour[static_cast<std::size_t>(w)] = 1 - colour[static_cast<std::size_t>(v)];
        stack.push_back(w);
      } else if (colour[static_cast<std::size_t>(w)] == colour[static_cast<std::size_t>(v)]) {
        return std::nullopt;
      }
    }
  }
  std::pair<std::vector<int>, std::vector<int>> sides;
  for (int v = 0; v < 8; ++v) {
    if (colour[static_cast<std::size_t>(v)] < 0) return std::nullopt;
    (colour[static_cast<std::size_t>(v)] ? sides.second : sides.first).push_back(v);
  }
  if (sides.first.size() != 4) return std::nullopt;
  return sides;
}

/// Branch sets of a K₄,₄ minor: sets 0..3 form one side, 4..7 the other.
struct MinorWitness {
  std::array<std::vector<int>, 8> branch;
};

/// Independent check of a witness against g: sets nonempty, disjoint,
/// connected in g, and every cross pair joined by an edge.
inline bool check_minor_witness(const Graph& g, const MinorWitness& w) {
  std::vector<int> owner(g.size(), -1);
  for (int i = 0; i < 8; ++i) {
    const auto& b = w.branch[static_cast<std::size_t>(i)];
    if (b.empty()) return false;
    for (int v : b) {
      if (v < 0 || static_cast<std::size_t>(v) >= g.size() || owner[static_cast<std::size_t>(v)] >= 0) return false;
      owner[static_cast<std::size_t>(v)] = i;
    }
  }
  for (int i = 0; i < 8; ++i) {
    const auto& b = w.branch[static_cast<std::size_t>(i)];
    std::set<int> seen{b[0]};
    std::vector<int> stack{b[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int x : g.adj[static_cast<std::size_t>(v)])
        if (owner[static_cast<std::size_t>(x)] == i && seen.insert(x).second) stack.push_back(x);
    }
    if (seen.size() != b.size()) return false;
  }
  std::set<std::pair<int, int>> joined;
  for (const auto& [a, b] : g.edges()) {
    int oa = owner[static_cast<std::size_t>(a)], ob = owner[static_cast<std::size_t>(b)];
    if (oa >= 0 && ob >= 0) joined.emplace(std::min(oa, ob), std::max(oa, ob));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 8; ++j)
      if (!joined.count({i, j})) return false;
  return true;
}

namespace detail {

/// Graph whose vertices are connected branch sets of an original graph.
struct Quotient {
  std::vector<std::vector<int>> branch;
  std::vector<std::set<int>> adj;

  std::size_t size() const { return branch.size(); }
  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& s : adj) m += s.size();
    return m / 2;
  }
  std::size_t components() const {
    std::vector<int> seen(size(), 0);
    std::size_t n = 0;
    for (std::size_t s = 0; s < size(); ++s) {
      if (seen[s]) continue;
      ++n;
      std::vector<std::size_t> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(static_cast<std::size_t>(w));
          }
      }
    }
    return n;
  }

  /// Merges b into a (a and b adjacent) or drops b (a = -1).
  Quotient merged(int a, int b) const {
    Quotient q;
    std::vector<int> id(size(), -1);
    for (std::size_t v = 0; v < size(); ++v) {
      if (static_cast<int>(v) == b) continue;
      id[v] = static_cast<int>(q.branch.size());
      q.branch.push_back(branch[v]);
    }
    if (a >= 0) {
      id[static_cast<std::size_t>(b)] = id[static_cast<std::size_t>(a)];
      auto& ba = q.branch[static_cast<std::size_t>(id[static_cast<std::size_t>(a)])];
      ba.insert(ba.end(), branch[static_cast<std::size_t>(b)].begin(), branch[static_cast<std::size_t>(b)].end());
      std::sort(ba.begin(), ba.end());
    }
    q.adj.resize(q.branch.size());
    for (std::size_t v = 0; v < size(); ++v)
      for (int w : adj[v]) {
        int x = id[v], y = id[static_cast<std::size_t>(w)];
        if (x >= 0 && y >= 0 && x != y) q.adj[static_cast<std::size_t>(x)].insert(y);
      }
    return q;
  }

  std::vector<std::vector<int>> key() const {
    auto k = branch;
    std::sort(k.begin(), k.end());
    return k;
  }
};

inline Quotient quotient_of(const Graph& g) {
  Quotient q;
  for (std::size_t v = 0; v < g.size(); ++v) q.branch.push_back({static_cast<int>(v)});
  q.adj = g.adj;
  return q;
}

/// Safe reductions for minors of min-degree-3 targets: drop vertices of
/// degree ≤ 1 and absorb degree-2 vertices into a neighbour.
inline Quotient reduce(Quotient q) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < q.size(); ++v) {
      if (q.adj[v].size() <= 1) {
        q = q.merged(-1, static_cast<int>(v));
      } else if (q.adj[v].size() == 2) {
        q = q.merged(*q.adj[v].begin(), static_cast<int>(v));
      } else {
        continue;
      }
      changed = true;
      break;
    }
  }
  return q;
}

/// A K₄,₄ subgraph (any 4-set with ≥ 4 common neighbours).
inline std::optional<MinorWitness> k44_subgraph(const Quotient& q) {
  std::vector<int> cand;
  for (std::size_t v = 0; v < q.size(); ++v)
    if (q.adj[v].size() >= 4) cand.push_back(static_cast<int>(v));
  const std::size_t n = cand.size();
  if (n < 8) return std::nullopt;
  std::array<int, 4> pick{};
  std::optional<MinorWitness> found;
  auto rec = [&](auto&& self, std::size_t start, int depth, std::set<int> common) -> bool {
    if (depth > 0 && common.size() < 4) return false;
    if (depth == 4) {
      for (int v : pick) common.erase(v);
      if (common.size() < 4) return false;
      MinorWitness w;
      auto it = common.begin();
      for (int i = 0; i < 4; ++i, ++it) {
        w.branch[static_cast<std::size_t>(i)] = q.branch[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
        w.branch[static_cast<std::size_t>(4 + i)] = q.branch[static_cast<std::size_t>(*it)];
      }
      found = w;
      return true;
    }
    for (std::size_t i = start; i < n; ++i) {
      const int v = cand[i];
      pick[static_cast<std::size_t>(depth)] = v;
      std::set<int> next;
      const auto& nb = q.adj[static_cast<std::size_t>(v)];
      if (depth == 0) next = nb;
      else
        std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::inserter(next, next.begin()));
      if (self(self, i + 1, depth + 1, std::move(next))) return true;
    }
    return false;
  };
  rec(rec, 0, 0, {});
  return found;
}

/// K₄,₄ has cycle rank 9, and minors never raise the cycle rank.
inline bool can_host_k44(const Quotient& q) {
  if (q.size() < 8) return false;
  const long long rank = static_cast<long long>(q.edge_count()) - static_cast<long long>(q.size()) +
                         static_cast<long long>(q.components());
  return rank >= 9;
}

/// Equal neighbourhoods apart from each other (merged twins become adjacent).
inline bool twins(const Quotient& q, int a, int b) {
  if (a == b) return false;
  auto na = q.adj[static_cast<std::size_t>(a)], nb = q.adj[static_cast<std::size_t>(b)];
  na.erase(b);
  nb.erase(a);
  return na == nb;
}

}  // namespace detail

struct MinorSearch {
  std::optional<MinorWitness> witness;
  std::string method;  // "subgraph", "twin contractions", "search" or "" when absent
  std::size_t states = 0;
};

/// K₄,₄ minor search. First a K₄,₄ subgraph, then contractions of twin edge
/// pairs (a a′, b b′ with a, a′ and b, b′ twins, as v⁺, v⁻ are in O(L)), then
/// an exhaustive contraction/deletion search over at most `budget` states.
/// Absence is definitive when the search space is exhausted; otherwise
/// BudgetExceeded is thrown.
inline MinorSearch has_K44_minor(const Graph& g, std::size_t budget = 200000) {
  if (g.size() > 40) throw InputError("minor search is limited to 40 vertices");
  MinorSearch out;
  auto finish = [&](std::optional<MinorWitness> w, const char* how) {
    if (!check_minor_witness(g, *w)) throw InvariantViolation("K44 minor witness failed its check");
    out.witness = std::move(w);
    out.method = how;
    return out;
  };
  detail::Quotient q0 = detail::reduce(detail::quotient_of(g));
  if (!detail::can_host_k44(q0)) return out;
  if (auto w = detail::k44_subgraph(q0)) return finish(w, "subgraph");

  // twin-pair contractions keep the octahedral structure of O(L)
  std::set<std::vector<std::vector<int>>> seen;
  auto twin_search = [&](auto&& self, const detail::Quotient& q) -> std::optional<MinorWitness> {
    if (++out.states > budget || !seen.insert(q.key()).second || !detail::can_host_k44(q)) return std::nullopt;
    if (auto w = detail::k44_subgraph(q)) return w;
    for (int a = 0; a < static_cast<int>(q.size()); ++a)
      for (int a2 = a + 1; a2 < static_cast<int>(q.size()); ++a2) {
        if (!detail::twins(q, a, a2)) continue;
        for (int b : q.adj[static_cast<std::size_t>(a)])
          for (int b2 : q.adj[static_cast<std::size_t>(a2)]) {
            if (b2 == b || b2 == a || b == a2 || !detail::twins(q, b, b2)) continue;
            // contract a–b and a2–b2; ids shift after the first merge
            detail::Quotient r = q.merged(a, b);
            auto shift = [&](int x) { return x > b ? x - 1 : x; };
            r = r.merged(shift(a2), shift(b2));
            if (auto w = self(self, detail::reduce(r))) return w;
          }
      }
    return std::nullopt;
  };
  if (auto w = twin_search(twin_search, q0)) return finish(w, "twin contractions");

  seen.clear();
  bool exhausted = true;
  auto search = [&](auto&& self, const detail::Quotient& q) -> std::optional<MinorWitness> {
    if (!seen.insert(q.key()).second || !detail::can_host_k44(q)) return std::nullopt;
    if (++out.states > 2 * budget) {
      exhausted = false;
      return std::nullopt;
    }
    if (auto w = detail::k44_subgraph(q)) return w;
    // contractions losing the fewest edges first, then deletions
    std::vector<std::pair<std::size_t, std::pair<int, int>>> moves;
    for (int a = 0; a < static_cast<int>(q.size()); ++a)
      for (int b : q.adj[static_cast<std::size_t>(a)])
        if (a < b) {
          std::size_t common = 0;
          for (int x : q.adj[static_cast<std::size_t>(a)]) common += q.adj[static_cast<std::size_t>(b)].count(x);
          moves.push_back({common, {a, b}});
        }
    std::stable_sort(moves.begin(), moves.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [_, ab] : moves)
      if (auto w = self(self, detail::reduce(q.merged(ab.first, ab.second)))) return w;
    for (int v = 0; v < static_cast<int>(q.size()); ++v)
      if (auto w = self(self, detail::reduce(q.merged(-1, v)))) return w;
    return std::nullopt;
  };
  if (auto w = search(search, q0)) return finish(w, "search");
  if (!exhausted) throw BudgetExceeded("K44 minor search exceeded its state budget");
  return out;
}

struct Prop52Evidence {
  int v = -1, vhat = -1;
  Subcomplex n2v, n2vhat;
  std::size_t link_v = 0, link_vhat = 0;  // n of the n-gon links
};

/// Searches a pair v, v̂ whose closed 2-neighbourhoods (iterated closed
/// stars) are disjoint from each other and from the singular set, with both
/// links cycles of length ≥ 4. Vertices are scanned in id order; the first
/// pair found is returned after the disjointness is re-checked.
inline std::optional<Prop52Evidence> prop52_hypothesis(const SimplicialComplex& c) {
  const Subcomplex sing = complexes::singular_set(c);
  std::set<int> avoid = sing.vertices;
  if (c.loops().count("alpha"))
    for (int v : c.loop("alpha")) avoid.insert(v);
  std::vector<int> good;
  std::map<int, Subcomplex> n2;
  for (int v = 0; v < static_cast<int>(c.vertex_count()); ++v) {
    if (avoid.count(v)) continue;
    auto link = complexes::vertex_link_graph(c, v);
    if (!link.is_cycle() || link.size() < 4) continue;
    auto n = complexes::neighborhood(c, v, 2);
    if (std::any_of(n.vertices.begin(), n.vertices.end(), [&](int w) { return avoid.count(w) > 0; })) continue;
    good.push_back(v);
    n2.emplace(v, std::move(n));
  }
  for (std::size_t i = 0; i < good.size(); ++i)
    for (std::size_t j = i + 1; j < good.size(); ++j) {
      const auto& a = n2.at(good[i]);
      const auto& b = n2.at(good[j]);
      if (a.intersects(b)) continue;
      Prop52Evidence e;
      e.v = good[i];
      e.vhat = good[j];
      e.n2v = a;
      e.n2vhat = b;
      e.link_v = complexes::vertex_link_graph(c, e.v).size();
      e.link_vhat = complexes::vertex_link_graph(c, e.vhat).size();
      for (int w : e.n2v.vertices)
        if (e.n2vhat.vertices.count(w) || avoid.count(w)) throw InvariantViolation("prop52 evidence is not disjoint");
      for (int w : e.n2vhat.vertices)
        if (avoid.count(w)) throw InvariantViolation("prop52 evidence meets the singular set");
      return e;
    }
  return std::nullopt;
}

}  // namespace vk::octa
