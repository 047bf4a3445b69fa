#pragma once

#include <string>

#include "vk/complexes/analysis.hpp"
#include "vk/complexes/constructions.hpp"
#include "vk/error.hpp"
#include "vk/freegroup/parser.hpp"
#include "vk/octa/octa.hpp"

namespace vk::cli {

using complexes::SimplicialComplex;

namespace detail {

inline int parse_index(const std::string& name, const std::string& arg) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size()) throw InputError("catalog name " + name + " needs an integer parameter");
  return k;
}

}  // namespace detail

/// delta62, bowtie, pk:K, xk:K, fkt:WORD, opk:K (octahedralized flag subdivision of P_K).
inline SimplicialComplex catalog(const std::string& name) {
  if (name == "delta62") return complexes::skeleton_of_simplex(6, 2);
  if (name == "bowtie") return complexes::bowtie();
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw InputError("unknown catalog name: " + name);
  const std::string kind = name.substr(0, colon), arg = name.substr(colon + 1);
  if (kind == "fkt") return complexes::complex_FKT(freegroup::parse_word(arg));
  const int k = detail::parse_index(name, arg);
  if (k < 1 || k > 64) throw InputError("catalog parameter must lie in 1..64");
  if (kind == "pk") return complexes::pseudo_projective_plane(k);
  if (kind == "xk") return complexes::complex_Xk(k);
  if (kind == "opk") return octa::octahedralize(complexes::barycentric_subdivision(complexes::pseudo_projective_plane(k)));
  throw InputError("unknown catalog name: " + name);
}

inline const char* catalog_help() { return "delta62, bowtie, pk:K, xk:K, fkt:WORD, opk:K"; }

}  // namespace vk::cli
