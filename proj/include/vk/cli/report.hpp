#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmp.h>
#include <json.hpp>

#include "vk/cli/catalog.hpp"
#include "vk/complexes/analysis.hpp"
#include "vk/freegroup/magnus.hpp"
#include "vk/freegroup/parser.hpp"
#include "vk/nilpotent/roots.hpp"
#include "vk/octa/octa.hpp"
#include "vk/pgroup/wreath.hpp"
#include "vk/spatial/spatial.hpp"
#include "vk/spatial/twisted.hpp"
#include "vk/vankampen/vankampen.hpp"

namespace vk::cli {

using json = nlohmann::json;
using linalg::BigInt;

inline constexpr const char* kSchema = "vk-report/1";
inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------- encoding

/// Integers that fit a long are JSON numbers, larger ones decimal strings.
inline json big_json(const BigInt& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); }

inline BigInt big_from(const json& j) {
  if (j.is_number_integer()) return linalg::big(j.get<long long>());
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("malformed integer " + j.get<std::string>());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

inline json big_array(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big_json(x));
  return a;
}

inline std::vector<BigInt> big_vector(const json& a) {
  std::vector<BigInt> v;
  for (const auto& x : a) v.push_back(big_from(x));
  return v;
}

/// Nonzero entries as [index, value] pairs.
inline json sparse_json(const std::vector<BigInt>& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) a.push_back({i, big_json(v[i])});
  return a;
}

inline std::vector<BigInt> from_sparse(const json& a, std::size_t n) {
  std::vector<BigInt> v(n);
  for (const auto& e : a) {
    const auto i = e.at(0).get<std::size_t>();
    if (i >= n) throw InputError("sparse index out of range");
    v[i] = big_from(e.at(1));
  }
  return v;
}

inline json envelope(const std::string& command, json inputs) {
  return {{"schema", kSchema},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"versions", {{"vk", kVersion}, {"gmp", gmp_version}}}};
}

inline std::string dump(const json& report) { return report.dump(2) + "\n"; }

/// Catalog name, or "inline" for a complex read from a file.
struct ComplexSource {
  std::string name = "inline";
  SimplicialComplex complex;
};

inline ComplexSource from_catalog(const std::string& name) { return {name, catalog(name)}; }

inline SimplicialComplex complex_of(const json& inputs) {
  SimplicialComplex c = complexes::from_json(inputs.at("complex"));
  const auto name = inputs.at("source").get<std::string>();
  if (name != "inline" && complexes::to_json(catalog(name)) != inputs.at("complex"))
    throw InputError("embedded complex differs from catalog " + name);
  return c;
}

inline json counts(const SimplicialComplex& c) {
  return {c.vertex_count(), c.edges().size(), c.triangles().size()};
}

// ------------------------------------------------------------ verification

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Verification {
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return !checks.empty();
  }
  void add(std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  /// Any exception thrown while re-checking counts as a failed check.
  void run(const std::string& name, const std::function<bool()>& f) {
    try {
      add(name, f());
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  }
  void merge(const std::string& prefix, const Verification& v) {
    for (const auto& c : v.checks) add(prefix + c.name, c.ok, c.detail);
  }
};

inline Verification verify(const json& report);

// ------------------------------------------------------------------- build

inline json build_report(const std::string& name) {
  SimplicialComplex c = catalog(name);
  auto h = c.homology();
  json rep = envelope("build", {{"source", name}});
  rep["verdicts"] = {{"counts", counts(c)},
                     {"euler", static_cast<long long>(c.vertex_count()) - static_cast<long long>(c.edges().size()) +
                                   static_cast<long long>(c.triangles().size())},
                     {"homology", {h.describe(0), h.describe(1), h.describe(2)}}};
  rep["certificates"] = {{"complex", complexes::to_json(c)}};
  return rep;
}

inline void verify_build(const json& rep, Verification& V) {
  const auto name = rep.at("inputs").at("source").get<std::string>();
  SimplicialComplex c = catalog(name);
  V.run("complex matches catalog", [&] { return complexes::to_json(c) == rep.at("certificates").at("complex"); });
  V.run("homology recomputed", [&] {
    auto h = complexes::from_json(rep.at("certificates").at("complex")).homology();
    return json{h.describe(0), h.describe(1), h.describe(2)} == rep.at("verdicts").at("homology");
  });
  V.run("counts", [&] { return counts(c) == rep.at("verdicts").at("counts"); });
}

// ------------------------------------------------------------- obstruction

inline json obstruction_report(const ComplexSource& src, vankampen::Ring ring, std::uint64_t seed) {
  auto r = vankampen::obstruction(src.complex, ring, seed);
  json rep = envelope("obstruction", {{"source", src.name},
                                      {"complex", complexes::to_json(src.complex)},
                                      {"ring", vankampen::to_string(ring)}});
  rep["seeds"] = {{"master", seed}};
  rep["verdicts"] = {{"vanishes", r.vanishes},
                     {"pair_count", r.pair_count},
                     {"move_count", r.move_count},
                     {"nonzero_entries", r.nonzero_entries},
                     {"witness_norm", big_json(r.witness_norm)}};
  json cert;
  cert["map"] = {{"seed", r.map.seed}, {"range", r.map.range}, {"attempts", r.map.attempts}, {"points", r.map.points}};
  cert["vector"] = sparse_json(r.vector);
  cert["witness"] = r.witness ? sparse_json(*r.witness) : json(nullptr);
  cert["non_membership"] = r.certificate
                               ? json{{"modulus", big_json(r.certificate->modulus)}, {"y", sparse_json(r.certificate->y)}}
                               : json(nullptr);
  rep["certificates"] = cert;
  return rep;
}

inline void verify_obstruction(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  const json& cert = rep.at("certificates");
  const json& verdicts = rep.at("verdicts");
  SimplicialComplex c = complex_of(in);
  const auto ring = vankampen::parse_ring(in.at("ring").get<std::string>());
  const auto seed = rep.at("seeds").at("master").get<std::uint64_t>();
  const vankampen::PairIndex index(c);
  const auto W = vankampen::finger_move_matrix(c, index);

  vankampen::GenericMap4 f;
  f.seed = cert.at("map").at("seed").get<std::uint64_t>();
  f.range = cert.at("map").at("range").get<std::int64_t>();
  f.attempts = cert.at("map").at("attempts").get<int>();
  f.points = cert.at("map").at("points").get<std::vector<vankampen::Point4>>();
  V.run("map is generic", [&] {
    vankampen::check_general_position(c, f, index);
    return true;
  });
  V.run("map reproduces from seed", [&] { return f.seed == seed && vankampen::random_generic_map(c, seed).points == f.points; });
  const auto v = vankampen::van_kampen_vector(f, index);
  V.run("V_f recomputed", [&] { return from_sparse(cert.at("vector"), index.size()) == v; });
  V.run("counts", [&] {
    std::size_t nz = 0;
    for (const auto& x : v) nz += x != 0;
    return verdicts.at("pair_count").get<std::size_t>() == index.size() &&
           verdicts.at("move_count").get<std::size_t>() == W.cols() && verdicts.at("nonzero_entries").get<std::size_t>() == nz;
  });
  const bool vanishes = verdicts.at("vanishes").get<bool>();
  if (vanishes) {
    V.run("lattice witness", [&] {
      if (cert.at("witness").is_null()) return false;
      auto x = from_sparse(cert.at("witness"), W.cols());
      BigInt norm = 0;
      for (const auto& e : x) norm += abs(e);
      if (norm != big_from(verdicts.at("witness_norm"))) return false;
      return ring == vankampen::Ring::Z ? linalg::check_solution(W, v, x) : vankampen::check_mod2_solution(W, v, x);
    });
  } else {
    V.run("non-membership certificate", [&] {
      const json& nm = cert.at("non_membership");
      if (nm.is_null()) return false;
      linalg::NonMembershipCertificate y{from_sparse(nm.at("y"), W.rows()), big_from(nm.at("modulus"))};
      if (ring == vankampen::Ring::Z2 && y.modulus != 2) return false;
      return linalg::check_certificate(W, v, y);
    });
  }
}

// -------------------------------------------------------------------- word

inline json word_verdicts(const std::string& expr, const std::string& op, int gens, int maxdeg, std::int64_t k) {
  const auto w = freegroup::parse_word(expr);
  if (op == "reduce") {
    auto [core, conj] = freegroup::cyclic_reduce(w);
    return {{"reduced", w.to_string()}, {"length", w.length()}, {"cyclic_core", core.to_string()},
            {"conjugator", conj.to_string()}};
  }
  if (op == "depth") {
    auto d = freegroup::lcs_depth(w, maxdeg, gens);
    return {{"depth", d ? json(*d) : json(nullptr)},
            {"in_gamma", d ? *d : maxdeg + 1},
            {"magnus", freegroup::magnus(w, maxdeg, gens).to_string()}};
  }
  if (op.rfind("trivial@", 0) == 0) {
    const int n = detail::parse_index(op, op.substr(8));
    return {{"n", n}, {"trivial", freegroup::trivial_in_gamma_quotient(w, n, gens)}};
  }
  if (op == "power-test") {
    auto r = freegroup::is_kth_power(w, k, gens);
    return {{"k", k}, {"power", r.has_value()}, {"root", r ? json(r->to_string()) : json(nullptr)}};
  }
  throw InputError("word op must be reduce, depth, trivial@N or power-test");
}

inline json word_report(const std::string& expr, const std::string& op, int gens, int maxdeg, std::int64_t k) {
  json inputs{{"expr", expr}, {"op", op}, {"gens", gens}, {"maxdeg", maxdeg}};
  if (op == "power-test") inputs["k"] = k;
  json rep = envelope("word", inputs);
  rep["verdicts"] = word_verdicts(expr, op, gens, maxdeg, k);
  return rep;
}

inline void verify_word(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  const auto op = in.at("op").get<std::string>();
  const std::int64_t k = in.value("k", std::int64_t{2});
  V.run("verdicts recomputed", [&] {
    return word_verdicts(in.at("expr").get<std::string>(), op, in.at("gens").get<int>(), in.at("maxdeg").get<int>(), k) ==
           rep.at("verdicts");
  });
  if (op == "power-test" && rep.at("verdicts").at("power").get<bool>())
    V.run("root power reduces to the word", [&] {
      return freegroup::parse_word(rep.at("verdicts").at("root").get<std::string>()).pow(k) ==
             freegroup::parse_word(in.at("expr").get<std::string>());
    });
}

// -------------------------------------------------------------------- root

inline json levels_json(const std::vector<nilpotent::LevelRecord>& levels) {
  json a = json::array();
  for (const auto& l : levels)
    a.push_back({{"degree", l.degree}, {"basis", l.basis}, {"discrepancy", big_array(l.discrepancy)},
                 {"correction", big_array(l.correction)}});
  return a;
}

inline json root_body(const nilpotent::RootResult& r) {
  json out;
  if (const auto* c = std::get_if<nilpotent::RootCertificate>(&r)) {
    out["verdicts"] = {{"exists", true}, {"root", c->root_expression()}};
    out["certificates"] = {{"root_expression", c->root_expression()}, {"levels", levels_json(c->levels)}};
  } else {
    const auto& f = std::get<nilpotent::FailureAtLevel>(r);
    out["verdicts"] = {{"exists", false}, {"failure_degree", f.degree}};
    out["certificates"] = {
        {"failure", {{"degree", f.degree}, {"basis", f.basis}, {"coordinates", big_array(f.coordinates)}}},
        {"levels", levels_json(f.levels)}};
  }
  return out;
}

inline json root_report(const std::string& word, std::int64_t k, int n) {
  const auto x = freegroup::parse_word(word);
  json rep = envelope("root", {{"word", word}, {"k", k}, {"class", n}});
  rep.update(root_body(nilpotent::kth_root_mod_gamma(x, k, n)));
  return rep;
}

inline json prop42_report(std::int64_t p, int n) {
  const auto cert = nilpotent::proposition42_witness(p, n);
  json rep = envelope("prop42", {{"p", p}, {"n", n}, {"word", nilpotent::proposition42_expression(p, n)}});
  rep.update(root_body(cert));
  return rep;
}

inline void verify_root_like(const json& rep, const std::string& word, std::int64_t k, int n, Verification& V) {
  const auto x = freegroup::parse_word(word);
  if (rep.at("verdicts").at("exists").get<bool>()) {
    V.run("root re-verified by Magnus expansion", [&] {
      const auto expr = rep.at("certificates").at("root_expression").get<std::string>();
      return expr == rep.at("verdicts").at("root").get<std::string>() && nilpotent::verify_root(expr, x, k, n);
    });
  } else {
    V.run("failure level recomputed", [&] {
      const json& f = rep.at("certificates").at("failure");
      const auto coords = big_vector(f.at("coordinates"));
      bool blocked = false;
      for (const auto& c : coords) blocked = blocked || !linalg::divides(linalg::big(k), c);
      auto again = nilpotent::kth_root_mod_gamma(x, k, n);
      const auto* g = std::get_if<nilpotent::FailureAtLevel>(&again);
      return blocked && g && g->degree == f.at("degree").get<int>() && g->coordinates == coords &&
             rep.at("verdicts").at("failure_degree") == f.at("degree");
    });
  }
}

inline void verify_root_report(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  verify_root_like(rep, in.at("word").get<std::string>(), in.at("k").get<std::int64_t>(), in.at("class").get<int>(), V);
}

inline void verify_prop42(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  const auto p = in.at("p").get<std::int64_t>();
  const auto n = in.at("n").get<int>();
  V.run("word is a^p b^(p^(2^(n-1)))",
        [&] { return in.at("word").get<std::string>() == nilpotent::proposition42_expression(p, n); });
  V.run("root exists", [&] { return rep.at("verdicts").at("exists").get<bool>(); });
  verify_root_like(rep, nilpotent::proposition42_expression(p, n), p, n, V);
}

// ---------------------------------------------------------------- baumslag

inline json wreath_json(const pgroup::WreathElement& e) { return {{"vec", e.vec}, {"shift", e.shift}}; }

inline pgroup::WreathElement wreath_from(const json& j) {
  return {j.at("vec").get<std::vector<std::uint32_t>>(), j.at("shift").get<std::uint64_t>()};
}

/// p^(p^j + j + 1), the order of (Z/p)^(p^j) x| Z/p^(j+1).
inline BigInt expected_order(std::int64_t p, std::int64_t j) {
  BigInt pj, out;
  mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), pj.get_ui() + static_cast<unsigned long>(j) + 1);
  return out;
}

inline json baumslag_report(std::int64_t r, std::int64_t s, std::int64_t k, std::uint64_t budget = 10'000'000) {
  const auto c = pgroup::certify_not_kth_power(r, s, k, budget);
  json rep = envelope("baumslag", {{"r", r}, {"s", s}, {"k", k}, {"budget", budget}});
  rep["verdicts"] = {{"not_kth_power", true},
                     {"p", c.p},
                     {"group", c.group_label},
                     {"order", c.order},
                     {"expected_order", big_json(expected_order(c.p, c.j))},
                     {"enumerated", c.enumerated}};
  rep["certificates"] = {{"p", c.p},
                         {"i", c.i},
                         {"j", c.j},
                         {"m", c.m},
                         {"n", c.n},
                         {"swapped", c.swapped},
                         {"order_exponent", c.order_exponent},
                         {"image_a", wreath_json(c.image_a)},
                         {"image_b", wreath_json(c.image_b)},
                         {"target", wreath_json(c.target)}};
  return rep;
}

inline void verify_baumslag(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  const json& c = rep.at("certificates");
  pgroup::BaumslagCertificate cert{in.at("r").get<std::int64_t>(),
                                   in.at("s").get<std::int64_t>(),
                                   in.at("k").get<std::int64_t>(),
                                   c.at("p").get<std::int64_t>(),
                                   c.at("i").get<std::int64_t>(),
                                   c.at("j").get<std::int64_t>(),
                                   c.at("m").get<std::int64_t>(),
                                   c.at("n").get<std::int64_t>(),
                                   c.at("swapped").get<bool>(),
                                   c.at("order_exponent").get<std::uint64_t>(),
                                   rep.at("verdicts").at("order").get<std::uint64_t>(),
                                   wreath_from(c.at("image_a")),
                                   wreath_from(c.at("image_b")),
                                   wreath_from(c.at("target")),
                                   rep.at("verdicts").at("enumerated").get<std::uint64_t>(),
                                   rep.at("verdicts").at("group").get<std::string>()};
  V.run("order is p^(p^j+j+1)", [&] {
    return linalg::big(static_cast<long long>(cert.order)) == expected_order(cert.p, cert.j) &&
           big_from(rep.at("verdicts").at("expected_order")) == expected_order(cert.p, cert.j);
  });
  V.run("enumeration repeated", [&] {
    return cert.enumerated == cert.order && pgroup::check_certificate(cert, in.at("budget").get<std::uint64_t>());
  });
}

// ---------------------------------------------------------------------- cg

inline json cg_report(const std::string& source, const spatial::SpatialGraph& g) {
  const auto pairs = spatial::disjoint_cycle_pairs(g.graph());
  json rep = envelope("cg", {{"source", source}, {"graph", spatial::to_json(g)}});
  json links = json::array();
  BigInt sum = 0;
  for (const auto& [c1, c2] : pairs) {
    const BigInt lk = spatial::linking_number_checked(g, c1, c2);
    sum += lk;
    links.push_back({{"cycles", {c1, c2}}, {"lk", big_json(lk)}});
  }
  rep["verdicts"] = {{"omega", big_json(sum)}, {"omega_mod2", BigInt(abs(sum) % 2) == 0 ? 0 : 1}};
  rep["certificates"] = {{"linking", links}};
  return rep;
}

inline spatial::SpatialGraph cg_source(const std::string& source) {
  if (source.rfind("twisted:", 0) == 0) return spatial::twisted_K6(detail::parse_index(source, source.substr(8)));
  if (source.rfind("random:", 0) == 0) {
    const auto s = source.substr(7);
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("random source needs a seed");
    return spatial::random_straight_K6(seed);
  }
  throw InputError("unknown spatial graph source: " + source);
}

inline void verify_cg(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  const auto g = spatial::spatial_from_json(in.at("graph"));
  const auto source = in.at("source").get<std::string>();
  if (source != "inline")
    V.run("graph matches its source", [&] { return spatial::to_json(cg_source(source)) == in.at("graph"); });
  const json& links = rep.at("certificates").at("linking");
  const auto pairs = spatial::disjoint_cycle_pairs(g.graph());
  V.run("cycle pairs", [&] {
    if (links.size() != pairs.size()) return false;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (links[i].at("cycles") != json{pairs[i].first, pairs[i].second}) return false;
    return true;
  });
  V.run("linking numbers recomputed", [&] {
    BigInt sum = 0;
    for (std::size_t i = 0; i < pairs.size() && i < links.size(); ++i) {
      const BigInt lk = spatial::linking_number_checked(g, pairs[i].first, pairs[i].second);
      if (lk != big_from(links[i].at("lk"))) return false;
      sum += lk;
    }
    return sum == big_from(rep.at("verdicts").at("omega")) &&
           rep.at("verdicts").at("omega_mod2").get<int>() == (BigInt(abs(sum) % 2) == 0 ? 0 : 1);
  });
}

// -------------------------------------------------------------------- octa

inline json graph_json(const Graph& g) { return {{"vertices", g.size()}, {"names", g.names}, {"edges", g.edges()}}; }

inline json witness_json(const octa::MinorWitness& w) {
  json a = json::array();
  for (const auto& b : w.branch) a.push_back(b);
  return a;
}

inline octa::MinorWitness witness_from(const json& a) {
  if (!a.is_array() || a.size() != 8) throw InputError("a K44 witness has eight branch sets");
  octa::MinorWitness w;
  for (std::size_t i = 0; i < 8; ++i) w.branch[i] = a[i].get<std::vector<int>>();
  return w;
}

/// O(Lk(v)) for a vertex of L.
inline Graph octa_link(const SimplicialComplex& L, int v) {
  if (v < 0 || v >= static_cast<int>(L.vertex_count())) throw InputError("vertex out of range");
  return octa::octahedralize(complexes::vertex_link_graph(L, v));
}

inline SimplicialComplex subdivided(SimplicialComplex c, int times) {
  if (times < 0 || times > 3) throw InputError("subdivision count must lie in 0..3");
  for (int i = 0; i < times; ++i) c = complexes::barycentric_subdivision(c);
  return c;
}

struct OctaOptions {
  std::string op = "build";
  int subdivide = 0;
  std::optional<int> vertex;
  std::optional<int> cycle;
  std::size_t budget = 200000;
};

inline Graph k44_graph(const std::optional<SimplicialComplex>& L, const OctaOptions& o) {
  if (o.cycle) return octa::octahedralized_cycle(*o.cycle);
  if (!L) throw InputError("k44 needs a complex or --cycle");
  if (o.vertex) return octa_link(*L, *o.vertex);
  for (int v = 0; v < static_cast<int>(L->vertex_count()); ++v) {
    auto link = complexes::vertex_link_graph(*L, v);
    if (link.is_cycle() && link.size() >= 4) return octa::octahedralize(link);
  }
  throw InputError("no vertex of the complex has a cycle link of length >= 4");
}

inline json minor_json(const Graph& g, std::size_t budget) {
  const auto m = octa::has_K44_minor(g, budget);
  return {{"has_minor", m.witness.has_value()},
          {"method", m.method},
          {"witness", m.witness ? witness_json(*m.witness) : json(nullptr)}};
}

inline json octa_report(const std::optional<ComplexSource>& src, const OctaOptions& o) {
  json inputs{{"op", o.op}, {"subdivide", o.subdivide}, {"budget", o.budget}};
  std::optional<SimplicialComplex> L;
  if (src) {
    inputs["source"] = src->name;
    inputs["complex"] = complexes::to_json(src->complex);
    L = subdivided(src->complex, o.subdivide);
  }
  if (o.vertex) inputs["vertex"] = *o.vertex;
  if (o.cycle) inputs["cycle"] = *o.cycle;
  if (!L && o.op != "k44") throw InputError("octa " + o.op + " needs a complex");
  json rep = envelope("octa", inputs);
  if (o.op == "build") {
    const auto O = octa::octahedralize(*L);
    const auto cl = counts(*L), co = counts(O);
    bool doubling = true;
    for (std::size_t k = 0; k < 3; ++k) doubling = doubling && co[k].get<std::size_t>() == (std::size_t{2} << k) * cl[k].get<std::size_t>();
    rep["verdicts"] = {{"counts_L", cl}, {"counts_OL", co}, {"doubling", doubling}};
    rep["certificates"] = {{"complex", complexes::to_json(O)}};
  } else if (o.op == "flag") {
    const auto f = octa::is_flag(*L);
    rep["verdicts"] = {{"flag", f.flag}, {"clique", f.clique}};
  } else if (o.op == "prop52") {
    const auto e = octa::prop52_hypothesis(*L);
    if (!e) {
      rep["verdicts"] = {{"holds", false}};
    } else {
      const json mv = minor_json(octa_link(*L, e->v), o.budget), mh = minor_json(octa_link(*L, e->vhat), o.budget);
      rep["verdicts"] = {{"holds", true}, {"v", e->v}, {"vhat", e->vhat}, {"link_v", e->link_v},
                         {"link_vhat", e->link_vhat}, {"k44_in_link_v", mv.at("has_minor")},
                         {"k44_in_link_vhat", mh.at("has_minor")}};
      rep["certificates"] = {{"n2v", e->n2v.vertices}, {"n2vhat", e->n2vhat.vertices},
                             {"minor_v", mv.at("witness")}, {"minor_vhat", mh.at("witness")}};
    }
  } else if (o.op == "k44") {
    const Graph g = k44_graph(L, o);
    const json m = minor_json(g, o.budget);
    rep["verdicts"] = {{"has_minor", m.at("has_minor")}, {"method", m.at("method")}, {"graph_vertices", g.size()},
                       {"graph_edges", g.edge_count()}};
    rep["certificates"] = {{"graph", graph_json(g)}, {"witness", m.at("witness")}};
  } else {
    throw InputError("octa op must be build, flag, prop52 or k44");
  }
  return rep;
}

inline void verify_octa(const json& rep, Verification& V) {
  const json& in = rep.at("inputs");
  OctaOptions o;
  o.op = in.at("op").get<std::string>();
  o.subdivide = in.at("subdivide").get<int>();
  o.budget = in.at("budget").get<std::size_t>();
  if (in.contains("vertex")) o.vertex = in.at("vertex").get<int>();
  if (in.contains("cycle")) o.cycle = in.at("cycle").get<int>();
  std::optional<SimplicialComplex> L;
  if (in.contains("complex")) L = subdivided(complex_of(in), o.subdivide);
  const json& vd = rep.at("verdicts");
  if (o.op == "build") {
    V.run("octahedralization recomputed", [&] {
      return complexes::to_json(octa::octahedralize(*L)) == rep.at("certificates").at("complex");
    });
    V.run("2^(k+1) doubling", [&] {
      const auto cl = counts(*L);
      const auto co = counts(complexes::from_json(rep.at("certificates").at("complex")));
      for (std::size_t k = 0; k < 3; ++k)
        if (co[k].get<std::size_t>() != (std::size_t{2} << k) * cl[k].get<std::size_t>()) return false;
      return vd.at("doubling").get<bool>() && cl == vd.at("counts_L") && co == vd.at("counts_OL");
    });
  } else if (o.op == "flag") {
    V.run("flag verdict recomputed", [&] {
      const auto f = octa::is_flag(*L);
      return f.flag == vd.at("flag").get<bool>() && json(f.clique) == vd.at("clique");
    });
  } else if (o.op == "prop52") {
    if (!vd.at("holds").get<bool>()) {
      V.run("no admissible pair", [&] { return !octa::prop52_hypothesis(*L).has_value(); });
      return;
    }
    const int v = vd.at("v").get<int>(), vh = vd.at("vhat").get<int>();
    V.run("2-neighbourhoods recomputed", [&] {
      return json(complexes::neighborhood(*L, v, 2).vertices) == rep.at("certificates").at("n2v") &&
             json(complexes::neighborhood(*L, vh, 2).vertices) == rep.at("certificates").at("n2vhat");
    });
    V.run("disjoint from each other and the singular set", [&] {
      auto avoid = complexes::singular_set(*L).vertices;
      if (L->loops().count("alpha"))
        for (int w : L->loop("alpha")) avoid.insert(w);
      const auto a = complexes::neighborhood(*L, v, 2), b = complexes::neighborhood(*L, vh, 2);
      if (a.intersects(b)) return false;
      for (int w : a.vertices)
        if (avoid.count(w)) return false;
      for (int w : b.vertices)
        if (avoid.count(w)) return false;
      return true;
    });
    V.run("links are n-gons with n >= 4", [&] {
      for (int w : {v, vh}) {
        auto link = complexes::vertex_link_graph(*L, w);
        if (!link.is_cycle() || link.size() < 4) return false;
      }
      return true;
    });
    V.run("K44 minors in the octahedralized links", [&] {
      return octa::check_minor_witness(octa_link(*L, v), witness_from(rep.at("certificates").at("minor_v"))) &&
             octa::check_minor_witness(octa_link(*L, vh), witness_from(rep.at("certificates").at("minor_vhat")));
    });
  } else if (o.op == "k44") {
    const Graph g = k44_graph(L, o);
    V.run("graph rebuilt", [&] { return graph_json(g) == rep.at("certificates").at("graph"); });
    if (vd.at("has_minor").get<bool>())
      V.run("minor witness", [&] { return octa::check_minor_witness(g, witness_from(rep.at("certificates").at("witness"))); });
    else
      V.run("no minor recomputed", [&] { return !octa::has_K44_minor(g, o.budget).witness.has_value(); });
  } else {
    throw InputError("unknown octa op " + o.op);
  }
}

// ------------------------------------------------------------ pipeline-xk

inline json boundary_word_report(std::int64_t k, int n) {
  const auto b = nilpotent::immersion_boundary_word(k, n);
  json rep = envelope("boundary-word", {{"k", k}, {"n", n}});
  rep["verdicts"] = {{"trivial_mod_gamma_n1", b.trivial_mod_gamma_n1}, {"trivial_mod_gamma_n2", b.trivial_mod_gamma_n2}};
  rep["certificates"] = {{"root_expression", b.root.root_expression()},
                         {"alpha_expression", b.alpha_expression},
                         {"boundary_expression", b.boundary_expression}};
  return rep;
}

inline void verify_boundary_word(const json& rep, Verification& V) {
  const auto k = rep.at("inputs").at("k").get<std::int64_t>();
  const auto n = rep.at("inputs").at("n").get<int>();
  const json& c = rep.at("certificates");
  const auto root = c.at("root_expression").get<std::string>();
  const auto alpha = c.at("alpha_expression").get<std::string>();
  const auto boundary = c.at("boundary_expression").get<std::string>();
  V.run("boundary word assembled from the root", [&] {
    return alpha == "(" + root + ")^-1" &&
           boundary == "(" + alpha + ")^" + std::to_string(k) + " " + nilpotent::proposition42_expression(k, n);
  });
  V.run("root re-verified by Magnus expansion", [&] {
    return nilpotent::verify_root(root, freegroup::parse_word(nilpotent::proposition42_expression(k, n)), k, n);
  });
  V.run("boundary word trivial in F/gamma_(n+1)", [&] {
    auto d = freegroup::magnus(freegroup::parse_expr(boundary), n + 1, 2).lowest_nonconstant_degree();
    return rep.at("verdicts").at("trivial_mod_gamma_n1").get<bool>() && (!d || *d > n) &&
           rep.at("verdicts").at("trivial_mod_gamma_n2").get<bool>() == !d.has_value();
  });
}

inline json pipeline_xk_report(int k, int maxN, std::uint64_t seed) {
  if (k < 1) throw InputError("pipeline-xk needs k >= 1");
  if (maxN < 1 || maxN > 6) throw InputError("pipeline-xk needs 1 <= max-n <= 6");
  const auto src = from_catalog("xk:" + std::to_string(k));
  json rep = envelope("pipeline-xk", {{"k", k}, {"max_n", maxN}});
  rep["seeds"] = {{"master", seed}};
  json stages;
  stages["obstruction_Z"] = obstruction_report(src, vankampen::Ring::Z, seed);
  stages["obstruction_Z2"] = obstruction_report(src, vankampen::Ring::Z2, seed);
  const bool vz = stages["obstruction_Z"]["verdicts"]["vanishes"].get<bool>();
  json verdicts{{"obstruction_Z_vanishes", vz},
                {"obstruction_Z2_vanishes", stages["obstruction_Z2"]["verdicts"]["vanishes"]},
                {"short_circuit", !vz},
                {"not_kth_power", nullptr},
                {"root_failure_degree", nullptr},
                {"boundary_words_trivial", nullptr}};
  if (vz && k >= 2) {
    const std::string x = "a^" + std::to_string(k) + " b^" + std::to_string(k);
    stages["obstruction_depth"] = root_report(x, k, maxN);
    verdicts["root_failure_degree"] = stages["obstruction_depth"]["verdicts"].value("failure_degree", json(nullptr));
    stages["baumslag"] = baumslag_report(k, k, k);
    verdicts["not_kth_power"] = true;
    if (k >= 3 && k % 2 == 1) {
      json words = json::array();
      bool all = true;
      for (int n = 1; n <= maxN; ++n) {
        words.push_back(boundary_word_report(k, n));
        all = all && words.back()["verdicts"]["trivial_mod_gamma_n1"].get<bool>();
      }
      stages["boundary_words"] = words;
      verdicts["boundary_words_trivial"] = all;
    }
  }
  rep["verdicts"] = verdicts;
  rep["certificates"] = {{"stages", stages}};
  return rep;
}

inline void verify_pipeline(const json& rep, Verification& V) {
  const int k = rep.at("inputs").at("k").get<int>();
  const json& stages = rep.at("certificates").at("stages");
  const json& vd = rep.at("verdicts");
  const auto seed = rep.at("seeds").at("master");
  for (const char* s : {"obstruction_Z", "obstruction_Z2"}) {
    const json& st = stages.at(s);
    V.run(std::string(s) + " is X_k at the pipeline seed", [&] {
      return st.at("inputs").at("source") == "xk:" + std::to_string(k) && st.at("seeds").at("master") == seed;
    });
    V.merge(std::string(s) + ": ", verify(st));
  }
  const bool vz = stages.at("obstruction_Z").at("verdicts").at("vanishes").get<bool>();
  V.run("summary matches stages", [&] {
    return vd.at("obstruction_Z_vanishes").get<bool>() == vz && vd.at("short_circuit").get<bool>() == !vz &&
           vd.at("obstruction_Z2_vanishes") == stages.at("obstruction_Z2").at("verdicts").at("vanishes") &&
           stages.contains("baumslag") == (vz && k >= 2);
  });
  if (stages.contains("obstruction_depth")) V.merge("obstruction_depth: ", verify(stages.at("obstruction_depth")));
  if (stages.contains("baumslag")) V.merge("baumslag: ", verify(stages.at("baumslag")));
  if (stages.contains("boundary_words"))
    for (const auto& w : stages.at("boundary_words"))
      V.merge("boundary_word n=" + w.at("inputs").at("n").dump() + ": ", verify(w));
}

// ------------------------------------------------------------------ verify

inline Verification verify(const json& report) {
  if (!report.is_object() || !report.contains("schema") || report.at("schema") != kSchema)
    throw InputError("not a vk-report/1 document");
  if (!report.contains("command") || !report.at("command").is_string()) throw InputError("report has no command");
  static const std::map<std::string, void (*)(const json&, Verification&)> dispatch{
      {"build", verify_build},          {"obstruction", verify_obstruction}, {"word", verify_word},
      {"root", verify_root_report},     {"prop42", verify_prop42},           {"baumslag", verify_baumslag},
      {"cg", verify_cg},                {"octa", verify_octa},               {"pipeline-xk", verify_pipeline},
      {"boundary-word", verify_boundary_word}};
  const auto cmd = report.at("command").get<std::string>();
  auto it = dispatch.find(cmd);
  if (it == dispatch.end()) throw InputError("cannot verify reports of command " + cmd);
  Verification V;
  try {
    it->second(report, V);
  } catch (const std::exception& e) {
    V.add("report readable", false, e.what());
  }
  return V;
}

inline json verify_report(const json& report) {
  const Verification V = verify(report);
  json checks = json::array();
  for (const auto& c : V.checks) {
    json j{{"check", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  json rep = envelope("verify", {{"command", report.at("command")}});
  rep["verdicts"] = {{"verified", V.ok()}, {"checks", checks}};
  return rep;
}

}  // namespace vk::cli
