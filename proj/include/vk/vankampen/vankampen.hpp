#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vk/complexes/complex.hpp"
#include "vk/error.hpp"
#include "vk/linalg/bigint.hpp"
#include "vk/linalg/int_matrix.hpp"
#include "vk/linalg/membership.hpp"
#include "vk/random.hpp"

namespace vk::vankampen {

using complexes::Edge;
using complexes::SimplicialComplex;
using complexes::Triangle;
using linalg::BigInt;
using linalg::IntMatrix;

using Point4 = std::array<std::int64_t, 4>;
using i128 = __int128;

/// A map of the vertices into ℤ⁴ ⊂ ℚ⁴, extended linearly over each simplex.
struct GenericMap4 {
  std::vector<Point4> points;
  std::uint64_t seed = 0;
  std::int64_t range = 0;
  int attempts = 0;
};

/// Coordinates are kept below 2^24 so every 4×4 determinant of differences
/// fits comfortably in 128 bits.
inline constexpr std::int64_t kMaxCoordinate = std::int64_t(1) << 24;

namespace detail {

using Col = std::array<i128, 4>;

inline i128 det3(i128 a, i128 b, i128 c, i128 d, i128 e, i128 f, i128 g, i128 h, i128 i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

/// det of the matrix whose columns are c[0..3].
inline i128 det4(const std::array<Col, 4>& c) {
  i128 out = 0;
  for (int r = 0; r < 4; ++r) {
    int rs[3], k = 0;
    for (int x = 0; x < 4; ++x)
      if (x != r) rs[k++] = x;
    i128 minor = det3(c[1][rs[0]], c[2][rs[0]], c[3][rs[0]], c[1][rs[1]], c[2][rs[1]], c[3][rs[1]], c[1][rs[2]],
                      c[2][rs[2]], c[3][rs[2]]);
    out += (r % 2 ? -1 : 1) * c[0][r] * minor;
  }
  return out;
}

inline Col diff(const Point4& a, const Point4& b) {
  return {i128(a[0]) - b[0], i128(a[1]) - b[1], i128(a[2]) - b[2], i128(a[3]) - b[3]};
}

enum class Where { Outside, Boundary, Interior };

/// Position of barycentric parameters x1/D, x2/D relative to the standard triangle, D > 0.
inline Where classify(i128 x1, i128 x2, i128 D) {
  if (x1 < 0 || x2 < 0 || x1 + x2 > D) return Where::Outside;
  if (x1 == 0 || x2 == 0 || x1 + x2 == D) return Where::Boundary;
  return Where::Interior;
}

/// The affine planes of p and q: solves p0 + s1(p1−p0) + s2(p2−p0) = q0 + t1(q1−q0) + t2(q2−q0)
/// by Cramer's rule. D is det[p1−p0, p2−p0, q1−q0, q2−q0].
struct PlaneMeet {
  i128 D = 0;
  Where on_p = Where::Outside, on_q = Where::Outside;
};

inline PlaneMeet plane_meet(const Point4& p0, const Point4& p1, const Point4& p2, const Point4& q0, const Point4& q1,
                            const Point4& q2) {
  const Col a1 = diff(p1, p0), a2 = diff(p2, p0), b1 = diff(q1, q0), b2 = diff(q2, q0), rhs = diff(q0, p0);
  Col nb1, nb2;
  for (int r = 0; r < 4; ++r) {
    nb1[r] = -b1[r];
    nb2[r] = -b2[r];
  }
  PlaneMeet m;
  m.D = det4({a1, a2, b1, b2});
  if (m.D == 0) return m;
  // the system matrix is [a1 a2 −b1 −b2], whose determinant is also D
  i128 s1 = det4({rhs, a2, nb1, nb2}), s2 = det4({a1, rhs, nb1, nb2});
  i128 t1 = det4({a1, a2, rhs, nb2}), t2 = det4({a1, a2, nb1, rhs});
  i128 D = m.D;
  if (D < 0) {
    D = -D;
    s1 = -s1;
    s2 = -s2;
    t1 = -t1;
    t2 = -t2;
  }
  m.on_p = classify(s1, s2, D);
  m.on_q = classify(t1, t2, D);
  return m;
}

inline std::string describe(const Triangle& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

}  // namespace detail

/// Intersection number of the images of the oriented triangles s and t
/// (vertex order is the orientation). Requires s, t vertex-disjoint and the
/// map generic on the pair; throws GeneralPositionError otherwise.
inline int triangle_intersection_sign(const GenericMap4& f, const std::array<int, 3>& s, const std::array<int, 3>& t) {
  for (int a : s)
    for (int b : t)
      if (a == b) throw InputError("triangles are not vertex-disjoint");
  auto P = [&](int v) -> const Point4& { return f.points.at(static_cast<std::size_t>(v)); };
  auto m = detail::plane_meet(P(s[0]), P(s[1]), P(s[2]), P(t[0]), P(t[1]), P(t[2]));
  if (m.D == 0) throw GeneralPositionError("triangle planes are not transverse");
  if (m.on_p == detail::Where::Outside || m.on_q == detail::Where::Outside) return 0;
  if (m.on_p == detail::Where::Boundary || m.on_q == detail::Where::Boundary)
    throw GeneralPositionError("triangles meet on a boundary");
  return m.D > 0 ? 1 : -1;
}

/// All unordered pairs of vertex-disjoint triangles, as index pairs (i < j)
/// into the sorted triangle list, in lexicographic order.
class PairIndex {
 public:
  explicit PairIndex(const SimplicialComplex& c) : triangles_(c.triangle_list()) {
    for (std::uint32_t i = 0; i < triangles_.size(); ++i)
      for (std::uint32_t j = i + 1; j < triangles_.size(); ++j)
        if (!complexes::shares_vertex(triangles_[i], triangles_[j])) {
          lookup_.emplace(std::make_pair(i, j), static_cast<std::uint32_t>(pairs_.size()));
          pairs_.emplace_back(i, j);
        }
    for (std::uint32_t i = 0; i < triangles_.size(); ++i) tindex_.emplace(triangles_[i], i);
  }

  std::size_t size() const { return pairs_.size(); }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return pairs_; }
  std::pair<Triangle, Triangle> pair(std::size_t k) const {
    return {triangles_[pairs_.at(k).first], triangles_[pairs_.at(k).second]};
  }
  std::uint32_t triangle_index(const Triangle& t) const { return tindex_.at(t); }

  /// Row of the pair {a, b}; throws if they share a vertex.
  std::uint32_t row(const Triangle& a, const Triangle& b) const {
    std::uint32_t i = tindex_.at(a), j = tindex_.at(b);
    if (i > j) std::swap(i, j);
    auto it = lookup_.find({i, j});
    if (it == lookup_.end()) throw InputError("triangles " + detail::describe(a) + " and " + detail::describe(b) + " are not disjoint");
    return it->second;
  }

 private:
  std::vector<Triangle> triangles_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> lookup_;
  std::map<Triangle, std::uint32_t> tindex_;
};

/// Exact general-position check: distinct vertex images and, for every
/// disjoint triangle pair, transverse planes meeting either outside one of
/// the triangles or in the open interior of both.
inline void check_general_position(const SimplicialComplex& c, const GenericMap4& f, const PairIndex& index) {
  if (f.points.size() != c.vertex_count()) throw InputError("map does not cover every vertex");
  for (const auto& p : f.points)
    for (auto x : p)
      if (x > kMaxCoordinate || x < -kMaxCoordinate) throw InputError("map coordinate out of the supported range");
  std::map<Point4, int> seen;
  for (std::size_t v = 0; v < f.points.size(); ++v)
    if (!seen.emplace(f.points[v], static_cast<int>(v)).second) throw GeneralPositionError("two vertices share an image");
  for (std::size_t k = 0; k < index.size(); ++k) {
    auto [a, b] = index.pair(k);
    try {
      triangle_intersection_sign(f, a, b);
    } catch (const GeneralPositionError& e) {
      throw GeneralPositionError(std::string(e.what()) + " at " + detail::describe(a) + " x " + detail::describe(b));
    }
  }
}

inline void check_general_position(const SimplicialComplex& c, const GenericMap4& f) {
  check_general_position(c, f, PairIndex(c));
}

/// Uniform integer vertex images in [−range, range]⁴; on a general-position
/// failure the range doubles, up to max_attempts samples.
inline GenericMap4 random_generic_map(const SimplicialComplex& c, std::uint64_t seed, std::int64_t range = 10000,
                                      int max_attempts = 8) {
  if (range < 1) throw InputError("coordinate range must be positive");
  PairIndex index(c);
  Rng rng(seed, "generic-map");
  std::string last;
  for (int attempt = 1; attempt <= max_attempts && range <= kMaxCoordinate; ++attempt, range *= 2) {
    GenericMap4 f;
    f.seed = seed;
    f.range = range;
    f.attempts = attempt;
    f.points.resize(c.vertex_count());
    for (auto& p : f.points)
      for (auto& x : p) x = rng.uniform(-range, range);
    try {
      check_general_position(c, f, index);
      return f;
    } catch (const GeneralPositionError& e) {
      last = e.what();
    }
  }
  throw GeneralPositionError("no generic map found within the retry budget (last failure: " + last + ")");
}

/// V_f: intersection numbers of the images of disjoint triangle pairs, each
/// triangle oriented by increasing vertex id.
inline std::vector<BigInt> van_kampen_vector(const GenericMap4& f, const PairIndex& index) {
  std::vector<BigInt> v(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    auto [a, b] = index.pair(k);
    v[k] = triangle_intersection_sign(f, a, b);
  }
  return v;
}

inline std::vector<BigInt> van_kampen_vector(const SimplicialComplex& c, const GenericMap4& f) {
  return van_kampen_vector(f, PairIndex(c));
}

/// Incidence of edge e in the boundary of t = (a<b<c): bc ↦ +1, ac ↦ −1, ab ↦ +1.
inline int incidence(const Triangle& t, const Edge& e) {
  auto fs = complexes::faces(t);
  for (int i = 0; i < 3; ++i)
    if (fs[static_cast<std::size_t>(i)] == e) return i == 1 ? -1 : 1;
  return 0;
}

struct FingerMove {
  Triangle F;
  Edge E;
};

/// Columns of the finger-move matrix, in order: for each triangle F (sorted),
/// each edge E (sorted) vertex-disjoint from F.
inline std::vector<FingerMove> finger_moves(const SimplicialComplex& c) {
  std::vector<FingerMove> out;
  for (const Triangle& F : c.triangles())
    for (const Edge& E : c.edges())
      if (E[0] != F[0] && E[0] != F[1] && E[0] != F[2] && E[1] != F[0] && E[1] != F[1] && E[1] != F[2])
        out.push_back({F, E});
  return out;
}

/// W: the column for (F, E) has entry [F′ : E] at the pair {F, F′} for every
/// triangle F′ ⊇ E disjoint from F.
inline IntMatrix finger_move_matrix(const SimplicialComplex& c, const PairIndex& index) {
  std::map<Edge, std::vector<Triangle>> cofaces;
  for (const Triangle& t : c.triangles())
    for (const Edge& e : complexes::faces(t)) cofaces[e].push_back(t);
  IntMatrix W(index.size(), 0);
  for (const auto& [F, E] : finger_moves(c)) {
    std::vector<IntMatrix::Entry> col;
    auto it = cofaces.find(E);
    if (it != cofaces.end())
      for (const Triangle& G : it->second)
        if (!complexes::shares_vertex(F, G)) col.emplace_back(index.row(F, G), BigInt(incidence(G, E)));
    W.push_column(std::move(col));
  }
  return W;
}

inline IntMatrix finger_move_matrix(const SimplicialComplex& c) { return finger_move_matrix(c, PairIndex(c)); }

enum class Ring { Z, Z2 };

inline Ring parse_ring(const std::string& s) {
  if (s == "Z") return Ring::Z;
  if (s == "Z2") return Ring::Z2;
  throw InputError("ring must be Z or Z2");
}

inline std::string to_string(Ring r) { return r == Ring::Z ? "Z" : "Z2"; }

struct ObstructionResult {
  Ring ring = Ring::Z;
  bool vanishes = false;
  std::vector<BigInt> vector;
  /// W x = V_f (over ℤ) or W x ≡ V_f mod 2, when vanishing.
  std::optional<std::vector<BigInt>> witness;
  /// yᵀW ≡ 0, yᵀV_f ≢ 0 modulo the certificate's modulus, when not vanishing.
  std::optional<linalg::NonMembershipCertificate> certificate;
  std::size_t pair_count = 0;
  std::size_t move_count = 0;
  std::size_t nonzero_entries = 0;
  BigInt witness_norm = 0;  // ℓ¹ norm of the witness
  GenericMap4 map;
};

inline bool check_mod2_solution(const IntMatrix& W, const std::vector<BigInt>& v, const std::vector<BigInt>& x) {
  if (x.size() != W.cols() || v.size() != W.rows()) return false;
  auto Wx = W.multiply(x);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!linalg::divides(BigInt(2), BigInt(Wx[i] - v[i]))) return false;
  return true;
}

/// Decides whether V_f lies in the span of the finger-move columns: over 𝔽₂
/// first, then (for ring Z) over ℤ. Witnesses and certificates are
/// re-verified against W and V_f before returning.
inline ObstructionResult obstruction(const SimplicialComplex& c, Ring ring, std::uint64_t seed) {
  PairIndex index(c);
  ObstructionResult out;
  out.ring = ring;
  out.map = random_generic_map(c, seed);
  out.vector = van_kampen_vector(out.map, index);
  IntMatrix W = finger_move_matrix(c, index);
  out.pair_count = index.size();
  out.move_count = W.cols();
  for (const auto& x : out.vector) out.nonzero_entries += x != 0;

  auto mod2 = linalg::ColumnSpaceGf2(W).solve(out.vector);
  if (!mod2.member) {
    out.certificate = mod2.certificate;
  } else if (ring == Ring::Z2) {
    if (!check_mod2_solution(W, out.vector, *mod2.solution))
      throw InvariantViolation("mod 2 witness failed re-multiplication");
    out.vanishes = true;
    out.witness = mod2.solution;
  } else {
    auto z = linalg::ColumnLattice(W).solve(out.vector);
    if (z.member) {
      if (!linalg::check_solution(W, out.vector, *z.solution))
        throw InvariantViolation("integer witness failed re-multiplication");
      out.vanishes = true;
      out.witness = z.solution;
    } else {
      out.certificate = z.certificate;
    }
  }
  if (out.certificate && !linalg::check_certificate(W, out.vector, *out.certificate))
    throw InvariantViolation("non-membership certificate failed re-verification");
  if (out.witness)
    for (const auto& x : *out.witness) out.witness_norm += abs(x);
  return out;
}

}  // namespace vk::vankampen
