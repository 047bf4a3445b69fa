#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/linalg/bigint.hpp"
#include "vk/linalg/int_matrix.hpp"
#include "vk/linalg/membership.hpp"

namespace vk::linalg {

/// H_i ≅ ℤ^betti[i] ⊕ ⨁ ℤ/torsion[i][j].
struct Homology {
  std::array<std::size_t, 3> betti{};
  std::array<std::vector<BigInt>, 3> torsion{};

  /// e.g. "Z^2 + Z/3"; "0" for the trivial group.
  std::string describe(std::size_t i) const {
    std::string s;
    if (betti[i] == 1) s = "Z";
    if (betti[i] > 1) s = "Z^" + std::to_string(betti[i]);
    for (const auto& t : torsion[i]) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
    return s.empty() ? "0" : s;
  }
};

/// Integer homology of C2 --d2--> C1 --d1--> C0.
inline Homology homology_via_snf(const IntMatrix& d1, const IntMatrix& d2) {
  if (d1.cols() != d2.rows()) throw InputError("boundary matrices are not composable");
  std::vector<BigInt> acc(d1.rows(), BigInt(0));
  for (std::size_t c = 0; c < d2.cols(); ++c) {
    for (const auto& [e, a] : d2.column(c))
      for (const auto& [v, b] : d1.column(e)) acc[v] += a * b;
    for (const auto& [e, a] : d2.column(c))
      for (const auto& [v, b] : d1.column(e)) {
        if (acc[v] != 0) throw InputError("boundary of a boundary is nonzero");
        acc[v] = 0;
      }
  }
  ColumnLattice l1(d1), l2(d2);
  const std::size_t r1 = l1.rank(), r2 = l2.rank();
  Homology h;
  h.betti[0] = d1.rows() - r1;
  h.betti[1] = d1.cols() - r1 - r2;
  h.betti[2] = d2.cols() - r2;
  for (const auto& f : l1.invariant_factors())
    if (f != 1) h.torsion[0].push_back(f);
  for (const auto& f : l2.invariant_factors())
    if (f != 1) h.torsion[1].push_back(f);
  return h;
}

}  // namespace vk::linalg
