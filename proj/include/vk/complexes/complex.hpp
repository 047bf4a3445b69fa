#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vk/error.hpp"
#include "vk/linalg/homology.hpp"
#include "vk/linalg/int_matrix.hpp"

namespace vk::complexes {

using Edge = std::array<int, 2>;
using Triangle = std::array<int, 3>;

inline Edge make_edge(int a, int b) {
  if (a == b) throw InputError("degenerate edge");
  return a < b ? Edge{a, b} : Edge{b, a};
}

inline Triangle make_triangle(int a, int b, int c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) throw InputError("degenerate triangle");
  return t;
}

inline std::array<Edge, 3> faces(const Triangle& t) {
  return {Edge{t[1], t[2]}, Edge{t[0], t[2]}, Edge{t[0], t[1]}};
}

inline bool shares_vertex(const Triangle& t, const Triangle& u) {
  for (int a : t)
    for (int b : u)
      if (a == b) return true;
  return false;
}

/// Finite simplicial 2-complex on vertex ids 0..n-1. Simplices are stored
/// sorted, each oriented by increasing vertex id.
///
/// Tags come in two kinds: loops (cyclic vertex sequences whose consecutive
/// pairs are edges, e.g. "alpha", "gamma") and subcomplexes (lists of
/// simplices given as vertex lists, e.g. "K6", "piece").
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  int add_vertex(std::string label = {}) {
    labels_.push_back(std::move(label));
    return static_cast<int>(labels_.size()) - 1;
  }

  void add_edge(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    edges_.insert(make_edge(a, b));
  }

  void add_triangle(int a, int b, int c) {
    Triangle t = make_triangle(a, b, c);
    for (int v : t) check_vertex(v);
    triangles_.insert(t);
    for (const Edge& e : faces(t)) edges_.insert(e);
  }

  void remove_triangle(int a, int b, int c) { triangles_.erase(make_triangle(a, b, c)); }

  std::size_t vertex_count() const { return labels_.size(); }
  const std::set<Edge>& edges() const { return edges_; }
  const std::set<Triangle>& triangles() const { return triangles_; }
  bool has_edge(int a, int b) const { return a != b && edges_.count(make_edge(a, b)); }
  bool has_triangle(int a, int b, int c) const { return triangles_.count(make_triangle(a, b, c)) > 0; }

  const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
  void set_label(int v, std::string l) { labels_.at(static_cast<std::size_t>(v)) = std::move(l); }
  /// Vertex id with the given label, or -1.
  int find_label(const std::string& l) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == l) return static_cast<int>(i);
    return -1;
  }
  int vertex(const std::string& l) const {
    int v = find_label(l);
    if (v < 0) throw InputError("no vertex labelled " + l);
    return v;
  }

  std::map<std::string, std::vector<int>>& loops() { return loops_; }
  const std::map<std::string, std::vector<int>>& loops() const { return loops_; }
  std::map<std::string, std::vector<std::vector<int>>>& subcomplexes() { return subcomplexes_; }
  const std::map<std::string, std::vector<std::vector<int>>>& subcomplexes() const { return subcomplexes_; }

  const std::vector<int>& loop(const std::string& name) const {
    auto it = loops_.find(name);
    if (it == loops_.end()) throw InputError("no loop tagged " + name);
    return it->second;
  }

  long long euler_characteristic() const {
    return static_cast<long long>(labels_.size()) - static_cast<long long>(edges_.size()) +
           static_cast<long long>(triangles_.size());
  }

  /// Face closure, vertex ranges and tag consistency; throws InputError.
  void validate() const {
    for (const Edge& e : edges_) {
      check_vertex(e[0]);
      check_vertex(e[1]);
      if (e[0] >= e[1]) throw InputError("edge not sorted or degenerate");
    }
    for (const Triangle& t : triangles_) {
      if (!(t[0] < t[1] && t[1] < t[2])) throw InputError("triangle not sorted or degenerate");
      for (const Edge& e : faces(t))
        if (!edges_.count(e)) throw InputError("missing face of a triangle");
    }
    for (const auto& [name, loop] : loops_) {
      if (loop.size() < 3) throw InputError("loop " + name + " is shorter than 3");
      for (std::size_t i = 0; i < loop.size(); ++i)
        if (!has_edge(loop[i], loop[(i + 1) % loop.size()])) throw InputError("loop " + name + " leaves the 1-skeleton");
    }
    for (const auto& [name, simplices] : subcomplexes_)
      for (const auto& s : simplices) {
        if (s.size() == 1) check_vertex(s[0]);
        else if (s.size() == 2 && !has_edge(s[0], s[1])) throw InputError("tag " + name + " names a missing edge");
        else if (s.size() == 3 && !has_triangle(s[0], s[1], s[2])) throw InputError("tag " + name + " names a missing triangle");
        else if (s.empty() || s.size() > 3) throw InputError("tag " + name + " has a malformed simplex");
      }
  }

  std::vector<Edge> edge_list() const { return {edges_.begin(), edges_.end()}; }
  std::vector<Triangle> triangle_list() const { return {triangles_.begin(), triangles_.end()}; }

  /// ∂1 (vertices × edges) and ∂2 (edges × triangles) with the sorted-order orientation.
  std::pair<linalg::IntMatrix, linalg::IntMatrix> boundary_matrices() const {
    auto el = edge_list();
    std::map<Edge, std::uint32_t> eindex;
    for (std::size_t i = 0; i < el.size(); ++i) eindex[el[i]] = static_cast<std::uint32_t>(i);
    linalg::IntMatrix d1(labels_.size(), 0), d2(el.size(), 0);
    for (const Edge& e : el)
      d1.push_column({{static_cast<std::uint32_t>(e[0]), linalg::BigInt(-1)}, {static_cast<std::uint32_t>(e[1]), linalg::BigInt(1)}});
    for (const Triangle& t : triangles_) {
      auto f = faces(t);  // (bc, ac, ab) with signs +, -, +
      d2.push_column({{eindex.at(f[0]), linalg::BigInt(1)}, {eindex.at(f[1]), linalg::BigInt(-1)}, {eindex.at(f[2]), linalg::BigInt(1)}});
    }
    return {std::move(d1), std::move(d2)};
  }

  linalg::Homology homology() const {
    auto [d1, d2] = boundary_matrices();
    return linalg::homology_via_snf(d1, d2);
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_ && a.triangles_ == b.triangles_ && a.loops_ == b.loops_ &&
           a.subcomplexes_ == b.subcomplexes_;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= labels_.size()) throw InputError("vertex id out of range");
  }

  std::vector<std::string> labels_;
  std::set<Edge> edges_;
  std::set<Triangle> triangles_;
  std::map<std::string, std::vector<int>> loops_;
  std::map<std::string, std::vector<std::vector<int>>> subcomplexes_;
};

/// {"vertices":[{"id":0,"label":"x0"}], "edges":[[0,1]], "triangles":[[0,1,2]],
///  "tags":{"alpha":[0,1,2], "K6":[[1,2],[1,3]]}} with loops as flat id lists.
inline nlohmann::json to_json(const SimplicialComplex& c) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    nlohmann::json vj{{"id", v}};
    if (!c.label(static_cast<int>(v)).empty()) vj["label"] = c.label(static_cast<int>(v));
    j["vertices"].push_back(vj);
  }
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : c.edges()) j["edges"].push_back({e[0], e[1]});
  j["triangles"] = nlohmann::json::array();
  for (const Triangle& t : c.triangles()) j["triangles"].push_back({t[0], t[1], t[2]});
  j["tags"] = nlohmann::json::object();
  for (const auto& [name, loop] : c.loops()) j["tags"][name] = loop;
  for (const auto& [name, s] : c.subcomplexes()) {
    auto sorted = s;
    for (auto& x : sorted) std::sort(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    j["tags"][name] = sorted;
  }
  return j;
}

inline SimplicialComplex from_json(const nlohmann::json& j) {
  try {
    SimplicialComplex c;
    std::map<long long, int> ids;
    std::vector<std::pair<long long, std::string>> vs;
    for (const auto& v : j.at("vertices")) {
      if (v.is_number_integer()) vs.emplace_back(v.get<long long>(), "");
      else vs.emplace_back(v.at("id").get<long long>(), v.value("label", ""));
    }
    std::sort(vs.begin(), vs.end());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].first != static_cast<long long>(i)) throw InputError("vertex ids must be 0..n-1");
      c.add_vertex(vs[i].second);
    }
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        if (e.size() != 2) throw InputError("edge must have two vertices");
        c.add_edge(e[0].get<int>(), e[1].get<int>());
      }
    if (j.contains("triangles"))
      for (const auto& t : j.at("triangles")) {
        if (t.size() != 3) throw InputError("triangle must have three vertices");
        c.add_triangle(t[0].get<int>(), t[1].get<int>(), t[2].get<int>());
      }
    if (j.contains("tags"))
      for (const auto& [name, tag] : j.at("tags").items()) {
        if (!tag.is_array()) throw InputError("tag " + name + " must be an array");
        if (!tag.empty() && tag[0].is_array()) c.subcomplexes()[name] = tag.get<std::vector<std::vector<int>>>();
        else c.loops()[name] = tag.get<std::vector<int>>();
      }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed complex JSON: ") + e.what());
  }
}

}  // namespace vk::complexes
