#include <catch2/catch_amalgamated.hpp>

#include "operahedra/mn_lattice.hpp"
#include "operahedra/theta.hpp"
#include "operahedra/verify.hpp"

using namespace operahedra;

TEST_CASE("forced extrema match brute force on all small trees", "[forced-extrema]") {
  const VerificationReport r = verify_forced_extrema(4);
  for (const auto& f : r.failures) INFO(f.instance << ": " << f.detail);
  CHECK(r.verified());
  CHECK(r.instances_checked == 1 + 2 + 5 + 14);
}

TEST_CASE("associahedron constructions work on any tree", "[forced-extrema]") {
  // The branching witness violates the unary condition, yet associahedron
  // covers still have forced extrema.
  const PlaneTree t = PlaneTree::parse("((()())())");
  const ThetaLattice l = theta_lattice(t);
  LatticeAnalysis an(l.poset);
  (void)an;
  int assoc_seen = 0;
  for (std::size_t e = 0; e < l.poset.covers().size(); ++e) {
    if (l.cover_kinds[e] != MoveKind::associahedron) continue;
    ++assoc_seen;
    const auto [a, b] = l.poset.covers()[e];
    const CoverMove m = classify_cover(t, l.elements[static_cast<std::size_t>(a)],
                                       l.elements[static_cast<std::size_t>(b)]);
    const auto up_diff = l.poset.up_set(a).minus(l.poset.up_set(b));
    const auto down_diff = l.poset.down_set(b).minus(l.poset.down_set(a));
    const auto mx = l.poset.unique_maximal_in(up_diff);
    const auto mn = l.poset.unique_minimal_in(down_diff);
    REQUIRE(mx.has_value());
    REQUIRE(mn.has_value());
    CHECK(forced_max_of_difference(t, m) == l.elements[static_cast<std::size_t>(*mx)]);
    CHECK(forced_min_of_difference(t, m) == l.elements[static_cast<std::size_t>(*mn)]);
  }
  CHECK(assoc_seen > 0);
}

TEST_CASE("permutohedron constructions reject branching trees", "[forced-extrema]") {
  const PlaneTree t = PlaneTree::parse("((()())())");
  const ThetaLattice l = theta_lattice(t);
  for (std::size_t e = 0; e < l.poset.covers().size(); ++e) {
    if (l.cover_kinds[e] != MoveKind::permutohedron) continue;
    const auto [a, b] = l.poset.covers()[e];
    const CoverMove m = classify_cover(t, l.elements[static_cast<std::size_t>(a)],
                                       l.elements[static_cast<std::size_t>(b)]);
    CHECK_THROWS_AS(forced_max_of_difference(t, m), std::invalid_argument);
    CHECK_THROWS_AS(forced_min_of_difference(t, m), std::invalid_argument);
    break;
  }
}

TEST_CASE("witness tree has non-unique extrema at permutohedron covers", "[forced-extrema]") {
  const PlaneTree t = PlaneTree::parse("((()())())");
  const ThetaLattice l = theta_lattice(t);
  bool max_failure = false, min_failure = false;
  for (std::size_t e = 0; e < l.poset.covers().size(); ++e) {
    const auto [a, b] = l.poset.covers()[e];
    const bool has_max =
        l.poset.unique_maximal_in(l.poset.up_set(a).minus(l.poset.up_set(b))).has_value();
    const bool has_min =
        l.poset.unique_minimal_in(l.poset.down_set(b).minus(l.poset.down_set(a))).has_value();
    if (!has_max) {
      max_failure = true;
      CHECK(l.cover_kinds[e] == MoveKind::permutohedron);
    }
    if (!has_min) {
      min_failure = true;
      CHECK(l.cover_kinds[e] == MoveKind::permutohedron);
    }
  }
  CHECK(max_failure);
  CHECK(min_failure);
}

TEST_CASE("top cover forces the global maximum of the complement", "[forced-extrema]") {
  // At the unique lower cover of the top element the complement filter is
  // everything except the top's filter, so the forced maximum is its max.
  const PlaneTree t = chain(2);
  const ThetaLattice l = theta_lattice(t);
  const int top = *l.poset.top();
  REQUIRE(l.poset.down_covers(top).size() == 1);
  const int below = l.poset.down_covers(top)[0];
  const CoverMove m = classify_cover(t, l.elements[static_cast<std::size_t>(below)],
                                     l.elements[static_cast<std::size_t>(top)]);
  const ThetaPair forced = forced_max_of_difference(t, m);
  const auto diff = l.poset.up_set(below).minus(l.poset.up_set(top));
  const auto mx = l.poset.unique_maximal_in(diff);
  REQUIRE(mx.has_value());
  CHECK(forced == l.elements[static_cast<std::size_t>(*mx)]);
}
