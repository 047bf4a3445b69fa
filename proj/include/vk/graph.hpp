#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vk/error.hpp"

namespace vk {

/// Simple undirected graph on 0..n-1. `names` optionally maps vertices back
/// to ids of some ambient object (complex vertices, signed vertices, ...).
struct Graph {
  std::vector<std::set<int>> adj;
  std::vector<int> names;

  explicit Graph(std::size_t n = 0) : adj(n) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(static_cast<int>(i));
  }

  std::size_t size() const { return adj.size(); }
  int add_vertex(int name) {
    adj.emplace_back();
    names.push_back(name);
    return static_cast<int>(adj.size()) - 1;
  }
  void add_edge(int a, int b) {
    if (a == b) throw InputError("graph loops are not allowed");
    adj.at(static_cast<std::size_t>(a)).insert(b);
    adj.at(static_cast<std::size_t>(b)).insert(a);
  }
  bool has_edge(int a, int b) const { return adj.at(static_cast<std::size_t>(a)).count(b) > 0; }
  std::size_t degree(int v) const { return adj.at(static_cast<std::size_t>(v)).size(); }
  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& s : adj) m += s.size();
    return m / 2;
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (int b : adj[a])
        if (static_cast<int>(a) < b) out.emplace_back(static_cast<int>(a), b);
    return out;
  }

  /// Connected components as vertex lists.
  std::vector<std::vector<int>> components() const {
    std::vector<int> seen(adj.size(), 0);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < adj.size(); ++s) {
      if (seen[s]) continue;
      std::vector<int> comp, stack{static_cast<int>(s)};
      seen[s] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w : adj[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  bool is_cycle() const {
    if (adj.size() < 3 || components().size() != 1) return false;
    return std::all_of(adj.begin(), adj.end(), [](const auto& s) { return s.size() == 2; });
  }

  bool is_path() const {
    if (adj.empty() || components().size() != 1) return false;
    if (adj.size() == 1) return true;
    std::size_t ends = 0;
    for (const auto& s : adj) {
      if (s.size() > 2 || s.empty()) return false;
      ends += s.size() == 1;
    }
    return ends == 2;
  }

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) g.add_edge(static_cast<int>(a), static_cast<int>(b));
    return g;
  }

  static Graph complete_bipartite(std::size_t p, std::size_t q) {
    Graph g(p + q);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < q; ++b) g.add_edge(static_cast<int>(a), static_cast<int>(p + b));
    return g;
  }

  static Graph cycle(std::size_t n) {
    if (n < 3) throw InputError("cycle needs n >= 3");
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % n));
    return g;
  }
};

}  // namespace vk
