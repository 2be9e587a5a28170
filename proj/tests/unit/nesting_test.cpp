#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <set>

#include "operahedra/mn_lattice.hpp"
#include "operahedra/nesting.hpp"
#include "support/oracles.hpp"

using namespace operahedra;

namespace {

VertexSet tube_of(std::initializer_list<int> vs) {
  VertexSet s = 0;
  for (int v : vs) s |= single_vertex(v);
  return s;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long catalan(int n) {
  long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace

TEST_CASE("nesting axioms with diagnostics", "[nesting]") {
  CHECK(is_nesting(chain(2), {tube_of({0, 1, 2})}));
  CHECK(is_nesting(chain(2), {tube_of({0, 1, 2}), tube_of({1, 2})}));
  CHECK_FALSE(is_nesting(claw(2), {tube_of({0, 1, 2}), tube_of({1, 2})}));
  CHECK(nesting_violation(claw(2), {tube_of({0, 1, 2}), tube_of({1, 2})}) ==
        "a member does not induce a connected subgraph");
  CHECK(nesting_violation(chain(2), {tube_of({1, 2})}) == "the full vertex set is missing");
  CHECK(nesting_violation(chain(3), {tube_of({0, 1, 2, 3}), tube_of({3})}) ==
        "a tube has fewer than 2 vertices");
  CHECK(nesting_violation(chain(3), {tube_of({0, 1, 2, 3}), tube_of({0, 1}), tube_of({1, 2})}) ==
        "two tubes are neither nested nor disjoint");
}

TEST_CASE("maximal nesting counts on the named families", "[nesting]") {
  CHECK(enumerate_maximal_nestings(chain(3)).size() == 5);
  CHECK(enumerate_maximal_nestings(claw(3)).size() == 6);
  CHECK(enumerate_maximal_nestings(PlaneTree::parse("((()())())")).size() == 18);
  CHECK(enumerate_maximal_nestings(broom(2, 3)).size() == 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(static_cast<long long>(enumerate_maximal_nestings(chain(n)).size()) == catalan(n));
    CHECK(static_cast<long long>(enumerate_maximal_nestings(claw(n)).size()) == factorial(n));
  }
}

TEST_CASE("enumeration matches the direct laminar search", "[nesting]") {
  for (int n = 1; n <= 5; ++n)
    for (const PlaneTree& t : enumerate_trees(n))
      CHECK(enumerate_maximal_nestings(t) == oracles::brute_maximal_nestings(t));
}

TEST_CASE("flip replaces one tube and is an involution", "[nesting]") {
  {
    Nesting n{{tube_of({0, 1, 2}), tube_of({1, 2})}};
    n.canonicalize();
    const FlipResult f = flip(chain(2), n, tube_of({1, 2}));
    CHECK(f.added == tube_of({0, 1}));
    CHECK(f.nesting.has_tube(tube_of({0, 1})));
  }
  {
    Nesting n{{tube_of({0, 1, 2}), tube_of({0, 1})}};
    n.canonicalize();
    const FlipResult f = flip(claw(2), n, tube_of({0, 1}));
    CHECK(f.added == tube_of({0, 2}));
  }
  for (int n = 1; n <= 5; ++n)
    for (const PlaneTree& t : enumerate_trees(n))
      for (const Nesting& nest : enumerate_maximal_nestings(t))
        for (VertexSet tube : nest.tubes) {
          if (tube == t.full_mask()) continue;
          const FlipResult f = flip(t, nest, tube);
          CHECK(is_maximal_nesting(t, f.nesting));
          const FlipResult back = flip(t, f.nesting, f.added);
          CHECK(back.nesting == nest);
          CHECK(back.added == tube);
        }

  Nesting n{{tube_of({0, 1, 2}), tube_of({1, 2})}};
  n.canonicalize();
  CHECK_THROWS_AS((flip(chain(2), n, tube_of({0, 1, 2}))), std::invalid_argument);
  CHECK_THROWS_AS((flip(chain(2), n, tube_of({0, 1}))), std::invalid_argument);
}

TEST_CASE("flip graph is connected with n-1 moves per nesting", "[nesting]") {
  for (int n = 1; n <= 6; ++n)
    for (const PlaneTree& t : enumerate_trees(n)) {
      const auto all = enumerate_maximal_nestings(t);
      std::set<Nesting> seen{all.front()};
      std::queue<Nesting> frontier;
      frontier.push(all.front());
      while (!frontier.empty()) {
        const Nesting cur = frontier.front();
        frontier.pop();
        int flips = 0;
        for (VertexSet tube : cur.tubes) {
          if (tube == t.full_mask()) continue;
          ++flips;
          const Nesting next = flip(t, cur, tube).nesting;
          if (seen.insert(next).second) frontier.push(next);
        }
        CHECK(flips == n - 1);
      }
      CHECK(seen.size() == all.size());
    }
}

TEST_CASE("cover orientation follows the numeric condition", "[nesting]") {
  Nesting lower{{tube_of({0, 1, 2}), tube_of({0, 1})}};
  Nesting upper{{tube_of({0, 1, 2}), tube_of({1, 2})}};
  lower.canonicalize();
  upper.canonicalize();
  CHECK(cover_direction(chain(2), lower, upper) == CoverOrder::first_below);
  CHECK(cover_direction(chain(2), upper, lower) == CoverOrder::second_below);
  CHECK_THROWS_AS(cover_direction(chain(2), lower, lower), std::invalid_argument);
}

TEST_CASE("move types on chains, claws, and the witness tree", "[nesting]") {
  for (int n = 2; n <= 5; ++n) {
    const MnLattice ch = mn_lattice(chain(n));
    for (MoveKind k : ch.cover_kinds) CHECK(k == MoveKind::associahedron);
    const MnLattice cl = mn_lattice(claw(n));
    for (MoveKind k : cl.cover_kinds) CHECK(k == MoveKind::permutohedron);
  }
  const MnLattice fig = mn_lattice(PlaneTree::parse("((()())())"));
  int perm = 0, assoc = 0;
  for (MoveKind k : fig.cover_kinds) (k == MoveKind::permutohedron ? perm : assoc)++;
  CHECK(perm > 0);
  CHECK(assoc > 0);
}

TEST_CASE("mn poset matches the named lattices", "[nesting]") {
  CHECK(are_isomorphic(mn_poset(chain(3)), oracles::tamari_poset(3)));
  CHECK(are_isomorphic(mn_poset(claw(3)), oracles::weak_order_poset(3)));
  CHECK(mn_poset(broom(2, 3)).size() == 6);
}

TEST_CASE("bottom of the chain lattice is the prefix-tube nesting", "[nesting]") {
  const MnLattice l = mn_lattice(chain(3));
  REQUIRE(l.poset.bottom().has_value());
  const Nesting& bottom = l.elements[static_cast<std::size_t>(*l.poset.bottom())];
  CHECK(bottom.has_tube(tube_of({0, 1})));
  CHECK(bottom.has_tube(tube_of({0, 1, 2})));
  CHECK(bottom.has_tube(tube_of({0, 1, 2, 3})));
}
