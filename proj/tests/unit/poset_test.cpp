#include <catch2/catch_amalgamated.hpp>

#include "operahedra/mn_lattice.hpp"
#include "operahedra/poset.hpp"
#include "support/oracles.hpp"

using namespace operahedra;

TEST_CASE("order is reachability in the cover digraph", "[poset]") {
  const FinitePoset chain3 = oracles::chain_poset(2);
  CHECK(chain3.leq(0, 2));
  CHECK_FALSE(chain3.leq(2, 0));
  CHECK(chain3.leq(1, 1));
  const FinitePoset anti = oracles::antichain_poset(3);
  CHECK_FALSE(anti.leq(0, 1));
  CHECK_THROWS_AS(chain3.leq(0, 7), std::invalid_argument);
}

TEST_CASE("constructor validates reduction and acyclicity", "[poset]") {
  CHECK_THROWS_AS((FinitePoset(3, {{0, 1}, {1, 2}, {0, 2}})), std::invalid_argument);
  CHECK_THROWS_AS((FinitePoset(2, {{0, 1}, {1, 0}})), std::invalid_argument);
  CHECK_THROWS_AS((FinitePoset(2, {{0, 5}})), std::invalid_argument);
}

TEST_CASE("meet/join tables exist exactly on lattices", "[poset]") {
  CHECK(meet_join_tables(oracles::boolean_lattice(2)).ok());
  const auto fail = meet_join_tables(oracles::antichain_poset(2));
  CHECK_FALSE(fail.ok());
  CHECK((fail.missing_meet.has_value() || fail.missing_join.has_value()));
  CHECK(meet_join_tables(oracles::pentagon()).ok());
  CHECK(meet_join_tables(oracles::diamond_m3()).ok());
}

TEST_CASE("BEZ test agrees with table existence", "[poset]") {
  CHECK(is_lattice_bez(oracles::boolean_lattice(3)));
  CHECK_FALSE(is_lattice_bez(oracles::antichain_poset(2)));
  CHECK(is_lattice_bez(theta_poset(chain(3))));
  for (int n = 1; n <= 4; ++n)
    for (const PlaneTree& t : enumerate_trees(n)) CHECK(is_lattice_bez(mn_poset(t)));
}

TEST_CASE("irreducibles, height, extremality", "[poset]") {
  const FinitePoset chain5 = oracles::chain_poset(5);
  CHECK(join_irreducibles(chain5).size() == 5);
  CHECK(meet_irreducibles(chain5).size() == 5);
  CHECK(chain5.height() == 5);
  CHECK(is_extremal(chain5));

  CHECK(oracles::antichain_poset(4).height() == 0);

  const FinitePoset tam4 = mn_poset(chain(4));
  CHECK(join_irreducibles(tam4).size() == 6);  // C(4,2)
  CHECK(is_extremal(tam4));

  const FinitePoset weak3 = mn_poset(claw(3));
  CHECK(weak3.height() == 3);
  CHECK(join_irreducibles(weak3).size() == 4);
  CHECK_FALSE(is_extremal(weak3));
  CHECK(mn_poset(claw(4)).height() == 6);  // C(4,2) inversions
}

TEST_CASE("left-modularity and trimness", "[poset]") {
  const FinitePoset b3 = oracles::boolean_lattice(3);
  CHECK(LatticeAnalysis(b3).left_modular_elements().size() == 8);
  CHECK(is_trim(b3) == is_extremal(b3));
  CHECK_FALSE(is_trim(mn_poset(claw(3))));
  CHECK(is_trim(mn_poset(chain(4))));
  CHECK(is_trim(mn_poset(PlaneTree::parse("((())(()))"))));
}

TEST_CASE("semidistributivity, definitional and Barnard", "[poset]") {
  const FinitePoset fig = mn_poset(PlaneTree::parse("((()())())"));
  LatticeAnalysis an(fig);
  CHECK_FALSE(an.is_meet_semidistributive());
  CHECK_FALSE(an.is_join_semidistributive());
  CHECK_FALSE(an.barnard_meet_semidistributive());
  CHECK_FALSE(an.barnard_join_semidistributive());

  CHECK(is_meet_semidistributive(mn_poset(chain(4))));
  CHECK(is_join_semidistributive(mn_poset(chain(4))));
  CHECK(is_meet_semidistributive(oracles::boolean_lattice(3)));
  CHECK(is_join_semidistributive(oracles::boolean_lattice(3)));
  CHECK(is_meet_semidistributive(oracles::pentagon()));
  CHECK_FALSE(is_meet_semidistributive(oracles::diamond_m3()));
}

TEST_CASE("distributivity", "[poset]") {
  CHECK(is_distributive(oracles::boolean_lattice(2)));
  CHECK_FALSE(is_distributive(oracles::pentagon()));
  for (int n = 1; n <= 4; ++n)
    for (const PlaneTree& t : enumerate_trees(n))
      CHECK(is_distributive(mn_poset(t)) == (n <= 2));
}

TEST_CASE("intervals", "[poset]") {
  const FinitePoset b3 = oracles::boolean_lattice(3);
  CHECK(are_isomorphic(b3.interval(0, 7), b3));
  CHECK(b3.interval(3, 3).size() == 1);
  CHECK(are_isomorphic(b3.interval(0, 3), oracles::boolean_lattice(2)));
  CHECK_THROWS_AS(b3.interval(1, 2), std::invalid_argument);
}

TEST_CASE("isomorphism testing", "[poset]") {
  const FinitePoset weak3 = mn_poset(claw(3));
  CHECK(are_isomorphic(weak3, weak3));
  CHECK_FALSE(are_isomorphic(oracles::chain_poset(3), oracles::antichain_poset(4)));
  CHECK_FALSE(are_isomorphic(oracles::pentagon(), oracles::diamond_m3()));
  CHECK(are_isomorphic(mn_poset(chain(4)), oracles::tamari_poset(4)));
  CHECK(are_isomorphic(mn_poset(claw(4)), oracles::weak_order_poset(4)));
  // Same size and cover count, different posets.
  const FinitePoset hex(6, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}});
  const FinitePoset b2plus(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  CHECK_FALSE(are_isomorphic(hex, b2plus));
}

TEST_CASE("size cap is enforced", "[poset]") {
  CHECK_THROWS_AS(FinitePoset(5000, {}), PosetSizeError);
}

TEST_CASE("generic lattice invariants over the zoo", "[poset]") {
  std::vector<FinitePoset> zoo;
  zoo.push_back(oracles::boolean_lattice(1));
  zoo.push_back(oracles::boolean_lattice(3));
  zoo.push_back(oracles::chain_poset(6));
  zoo.push_back(oracles::pentagon());
  zoo.push_back(oracles::diamond_m3());
  zoo.push_back(oracles::tamari_poset(4));
  zoo.push_back(oracles::weak_order_poset(3));
  for (int n = 1; n <= 4; ++n)
    for (const PlaneTree& t : enumerate_trees(n)) zoo.push_back(mn_poset(t));

  for (const FinitePoset& p : zoo) {
    REQUIRE(is_lattice_bez(p));  // also asserts agreement with tables inside
    LatticeAnalysis an(p);
    const int sz = p.size();
    for (int x = 0; x < sz; ++x)
      for (int y = 0; y < sz; ++y) {
        CHECK(an.meet(x, an.join(x, y)) == x);   // absorption
        CHECK(an.join(x, an.meet(x, y)) == x);
        CHECK(an.meet(x, y) == an.meet(y, x));   // commutativity
        for (int z = 0; z < sz; ++z) {
          CHECK(an.meet(an.meet(x, y), z) == an.meet(x, an.meet(y, z)));
          CHECK(an.join(an.join(x, y), z) == an.join(x, an.join(y, z)));
        }
      }
    const int h = p.height();
    const int ji = static_cast<int>(an.join_irreducibles().size());
    const int mi = static_cast<int>(an.meet_irreducibles().size());
    CHECK(h <= ji);
    CHECK(h <= mi);
    if (an.is_meet_semidistributive() && an.is_join_semidistributive()) CHECK(ji == mi);
  }
}
