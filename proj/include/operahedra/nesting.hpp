#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "operahedra/plane_tree.hpp"

namespace operahedra {

inline std::string tube_to_string(VertexSet tube) {
  std::string s = "{";
  bool first = true;
  for (int v : set_vertices(tube)) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

inline bool tube_less(VertexSet a, VertexSet b) {
  const int ma = set_min(a), mb = set_min(b);
  if (ma != mb) return ma < mb;
  const int sa = set_size(a), sb = set_size(b);
  if (sa != sb) return sa < sb;
  return set_lex_less(a, b);
}

inline bool nested_or_disjoint(VertexSet a, VertexSet b) {
  const VertexSet common = a & b;
  return common == 0 || common == a || common == b;
}

/// A family of tubes of a fixed tree: contains the full vertex set, every
/// tube has at least two vertices, and any two tubes are nested or disjoint.
/// Tubes are kept in the canonical (min, size, lex) order.
struct Nesting {
  std::vector<VertexSet> tubes;

  void canonicalize() { std::sort(tubes.begin(), tubes.end(), tube_less); }
  bool has_tube(VertexSet t) const {
    return std::find(tubes.begin(), tubes.end(), t) != tubes.end();
  }
  bool operator==(const Nesting& o) const { return tubes == o.tubes; }
  bool operator!=(const Nesting& o) const { return !(*this == o); }
  bool operator<(const Nesting& o) const {
    return std::lexicographical_compare(tubes.begin(), tubes.end(), o.tubes.begin(),
                                        o.tubes.end(), tube_less);
  }
};

inline std::string nesting_to_string(const Nesting& n) {
  std::string s = "{";
  for (std::size_t i = 0; i < n.tubes.size(); ++i) {
    if (i) s += ',';
    s += tube_to_string(n.tubes[i]);
  }
  return s + "}";
}

/// Empty string when the family is a nesting; otherwise the violated axiom.
inline std::string nesting_violation(const PlaneTree& t, const std::vector<VertexSet>& tubes) {
  if (std::find(tubes.begin(), tubes.end(), t.full_mask()) == tubes.end())
    return "the full vertex set is missing";
  for (VertexSet tube : tubes) {
    if (set_size(tube) < 2) return "a tube has fewer than 2 vertices";
    if (!t.is_tube(tube)) return "a member does not induce a connected subgraph";
  }
  for (std::size_t i = 0; i < tubes.size(); ++i) {
    for (std::size_t j = i + 1; j < tubes.size(); ++j) {
      if (tubes[i] == tubes[j]) return "duplicate tube";
      if (!nested_or_disjoint(tubes[i], tubes[j]))
        return "two tubes are neither nested nor disjoint";
    }
  }
  return {};
}

inline bool is_nesting(const PlaneTree& t, const std::vector<VertexSet>& tubes) {
  return nesting_violation(t, tubes).empty();
}

inline bool is_maximal_nesting(const PlaneTree& t, const Nesting& nest) {
  return static_cast<int>(nest.tubes.size()) == t.n() && is_nesting(t, nest.tubes);
}

struct FlipResult {
  Nesting nesting;
  VertexSet removed = 0;
  VertexSet added = 0;
};

/// Replace tube by the unique other tube completing the shared sub-nesting
/// to a maximal nesting. Candidates are scanned inside the smallest tube of
/// the remainder that strictly contains the removed tube.
inline FlipResult flip(const PlaneTree& t, const Nesting& nest, VertexSet tube) {
  if (tube == t.full_mask())
    throw std::invalid_argument("flip: the full vertex set cannot be flipped");
  if (!nest.has_tube(tube)) throw std::invalid_argument("flip: tube is not in the nesting");

  std::vector<VertexSet> rest;
  rest.reserve(nest.tubes.size() - 1);
  VertexSet region = t.full_mask();
  for (VertexSet other : nest.tubes) {
    if (other == tube) continue;
    rest.push_back(other);
    if ((tube & other) == tube && set_size(other) < set_size(region)) region = other;
  }

  std::optional<VertexSet> replacement;
  // Submasks of the enclosing region, largest first only by construction
  // order; uniqueness is asserted below.
  for (VertexSet s = region;; s = (s - 1) & region) {
    if (s != tube && set_size(s) >= 2 && t.is_tube(s)) {
      bool compatible = true;
      for (VertexSet other : rest) {
        if (other == s || !nested_or_disjoint(s, other)) {
          compatible = false;
          break;
        }
      }
      if (compatible) {
        require(!replacement.has_value(), "flip: completion of the sub-nesting is not unique");
        replacement = s;
      }
    }
    if (s == 0) break;
  }
  require(replacement.has_value(), "flip: sub-nesting has no second completion");

  FlipResult r;
  r.removed = tube;
  r.added = *replacement;
  r.nesting.tubes = std::move(rest);
  r.nesting.tubes.push_back(*replacement);
  r.nesting.canonicalize();
  return r;
}

enum class MoveKind { permutohedron, associahedron };

inline const char* move_kind_name(MoveKind k) {
  return k == MoveKind::permutohedron ? "permutohedron" : "associahedron";
}

struct AdjacentPair {
  VertexSet only_in_first = 0;
  VertexSet only_in_second = 0;
};

inline AdjacentPair adjacent_tubes(const Nesting& a, const Nesting& b) {
  AdjacentPair r;
  int extra_a = 0, extra_b = 0;
  for (VertexSet tube : a.tubes)
    if (!b.has_tube(tube)) {
      r.only_in_first = tube;
      ++extra_a;
    }
  for (VertexSet tube : b.tubes)
    if (!a.has_tube(tube)) {
      r.only_in_second = tube;
      ++extra_b;
    }
  if (extra_a != 1 || extra_b != 1 || a.tubes.size() != b.tubes.size())
    throw std::invalid_argument("nestings are not adjacent (do not differ by one flip)");
  return r;
}

enum class CoverOrder { first_below, second_below };

/// Orient one flip. The exchanged tubes' difference sets are disjoint and
/// nonempty; the nesting whose vanishing tube owns the smaller minimum is
/// the lower one (equivalently, the vanishing tube with the smaller root).
/// When the two difference sets do not interleave, this agrees with the
/// all-elements comparison, which is asserted; for tube exchanges sharing a
/// root (permutohedron flips) the sets never interleave.
inline CoverOrder cover_direction(const PlaneTree& t, const Nesting& a, const Nesting& b) {
  (void)t;
  const AdjacentPair d = adjacent_tubes(a, b);
  const VertexSet ua = d.only_in_first & ~d.only_in_second;   // tau \ tau'
  const VertexSet ub = d.only_in_second & ~d.only_in_first;   // tau' \ tau
  require(ua != 0 && ub != 0, "adjacent tubes must be set-incomparable");
  const bool forward = set_min(ua) < set_min(ub);
  const bool all_forward = set_max(ua) < set_min(ub);
  const bool all_backward = set_max(ub) < set_min(ua);
  require(!all_forward || forward, "orientation contradicts the all-elements condition");
  require(!all_backward || !forward, "orientation contradicts the all-elements condition");
  if (set_min(d.only_in_first) == set_min(d.only_in_second))
    require(all_forward || all_backward,
            "difference sets of a shared-root exchange must not interleave");
  return forward ? CoverOrder::first_below : CoverOrder::second_below;
}

/// Permutohedron when the exchanged tubes share a root.
inline MoveKind move_type(const PlaneTree& t, const Nesting& a, const Nesting& b) {
  (void)t;
  const AdjacentPair d = adjacent_tubes(a, b);
  return set_min(d.only_in_first) == set_min(d.only_in_second) ? MoveKind::permutohedron
                                                               : MoveKind::associahedron;
}

}  // namespace operahedra
