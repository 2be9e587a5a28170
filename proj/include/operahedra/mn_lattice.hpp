#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "operahedra/nesting.hpp"
#include "operahedra/poset.hpp"
#include "operahedra/theta.hpp"

namespace operahedra {

/// All maximal nestings, realized by mapping the inverse bijection over
/// Theta; the direct laminar-family enumerator lives with the tests as an
/// independent oracle.
inline std::vector<Nesting> enumerate_maximal_nestings(const PlaneTree& t) {
  std::vector<Nesting> out;
  for (const ThetaPair& p : enumerate_theta(t)) out.push_back(psi_inverse(t, p));
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    require(out[i - 1] != out[i], "maximal nesting enumeration produced a duplicate");
  return out;
}

struct ThetaLattice {
  std::vector<ThetaPair> elements;           // canonical order
  FinitePoset poset;                         // covers are the Theta moves
  std::vector<MoveKind> cover_kinds;         // parallel to poset.covers()
};

struct MnLattice {
  std::vector<Nesting> elements;             // canonical order
  FinitePoset poset;                         // covers are the oriented flips
  std::vector<MoveKind> cover_kinds;
};

inline ThetaLattice theta_lattice(const PlaneTree& t) {
  std::vector<ThetaPair> elements = enumerate_theta(t);
  std::sort(elements.begin(), elements.end());
  std::map<ThetaPair, int> index;
  std::vector<std::string> labels;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    index.emplace(elements[static_cast<std::size_t>(i)], i);
    labels.push_back(theta_pair_to_string(elements[static_cast<std::size_t>(i)]));
  }
  std::vector<std::pair<int, int>> covers;
  std::map<std::pair<int, int>, MoveKind> kind_of;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    for (const CoverMove& m : theta_covers(t, elements[static_cast<std::size_t>(i)])) {
      auto it = index.find(m.upper);
      require(it != index.end(), "theta cover leads outside the enumerated set");
      covers.emplace_back(i, it->second);
      kind_of.emplace(std::make_pair(i, it->second), m.kind);
    }
  }
  FinitePoset poset(static_cast<int>(elements.size()), std::move(covers), std::move(labels));
  std::vector<MoveKind> kinds;
  for (auto e : poset.covers()) kinds.push_back(kind_of.at(e));
  return {std::move(elements), std::move(poset), std::move(kinds)};
}

inline MnLattice mn_lattice(const PlaneTree& t) {
  std::vector<Nesting> elements = enumerate_maximal_nestings(t);
  std::map<Nesting, int> index;
  std::vector<std::string> labels;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    index.emplace(elements[static_cast<std::size_t>(i)], i);
    labels.push_back(nesting_to_string(elements[static_cast<std::size_t>(i)]));
  }
  std::vector<std::pair<int, int>> covers;
  std::map<std::pair<int, int>, MoveKind> kind_of;
  const VertexSet full = t.full_mask();
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    const Nesting& nest = elements[static_cast<std::size_t>(i)];
    for (VertexSet tube : nest.tubes) {
      if (tube == full) continue;
      FlipResult f = flip(t, nest, tube);
      auto it = index.find(f.nesting);
      require(it != index.end(), "flip leads outside the enumerated set");
      if (cover_direction(t, nest, f.nesting) == CoverOrder::first_below) {
        covers.emplace_back(i, it->second);
        kind_of.emplace(std::make_pair(i, it->second), move_type(t, nest, f.nesting));
      }
    }
  }
  FinitePoset poset(static_cast<int>(elements.size()), std::move(covers), std::move(labels));
  std::vector<MoveKind> kinds;
  for (auto e : poset.covers()) kinds.push_back(kind_of.at(e));
  return {std::move(elements), std::move(poset), std::move(kinds)};
}

inline FinitePoset mn_poset(const PlaneTree& t) { return mn_lattice(t).poset; }
inline FinitePoset theta_poset(const PlaneTree& t) { return theta_lattice(t).poset; }

}  // namespace operahedra
