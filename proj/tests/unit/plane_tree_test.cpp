#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "operahedra/plane_tree.hpp"

using namespace operahedra;

namespace {

long long catalan(int n) {
  long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

const PlaneTree& fig_tree() {
  static const PlaneTree t = PlaneTree::parse("((()())())");
  return t;
}

}  // namespace

TEST_CASE("parse builds preorder-labeled trees", "[plane-tree]") {
  const PlaneTree single = PlaneTree::parse("()");
  CHECK(single.n() == 0);
  CHECK(single.children(0).empty());

  const PlaneTree ch = PlaneTree::parse("((()))");
  CHECK(ch.n() == 2);
  CHECK(ch.children(0) == std::vector<int>{1});
  CHECK(ch.children(1) == std::vector<int>{2});

  const PlaneTree& f = fig_tree();
  CHECK(f.n() == 4);
  CHECK(f.children(0) == std::vector<int>{1, 4});
  CHECK(f.children(1) == std::vector<int>{2, 3});
  CHECK(f.parent(4) == 0);
  CHECK(f.subtree_size(1) == 3);
}

TEST_CASE("parse errors carry byte offsets", "[plane-tree]") {
  CHECK_THROWS_AS(PlaneTree::parse(""), TreeParseError);
  CHECK_THROWS_AS(PlaneTree::parse("  "), TreeParseError);
  try {
    PlaneTree::parse("(()");
    FAIL("expected parse error");
  } catch (const TreeParseError& e) {
    CHECK(e.offset() == 3);
  }
  try {
    PlaneTree::parse("())");
    FAIL("expected parse error");
  } catch (const TreeParseError& e) {
    CHECK(e.offset() == 2);
  }
  try {
    PlaneTree::parse("()(");
    FAIL("expected parse error");
  } catch (const TreeParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(PlaneTree::parse("(x)"), TreeParseError);
}

TEST_CASE("render matches the format and round-trips", "[plane-tree]") {
  CHECK(PlaneTree::parse("()").render() == "()");
  CHECK(chain(2).render() == "((()))");
  CHECK(claw(3).render() == "(()()())");
  for (int n = 0; n <= 8; ++n)
    for (const PlaneTree& t : enumerate_trees(n)) CHECK(PlaneTree::parse(t.render()) == t);
}

TEST_CASE("tree families", "[plane-tree]") {
  CHECK(chain(0).n() == 0);
  CHECK(chain(4).render() == "((((()))))");
  CHECK(claw(1) == chain(1));
  CHECK(claw(4).render() == "(()()()())");

  const PlaneTree b = broom(3, 7);
  CHECK(b.n() == 7);
  for (int v = 0; v < 4; ++v) CHECK(b.children(v) == std::vector<int>{v + 1});
  CHECK(b.children(4) == std::vector<int>{5, 6, 7});
  for (int n = 1; n <= 6; ++n) {
    CHECK(broom(1, n) == chain(n));
    CHECK(broom(n, n) == claw(n));
  }
  CHECK_THROWS_AS(broom(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(broom(4, 3), std::invalid_argument);
}

TEST_CASE("tubes are connected subgraphs rooted at their minimum", "[plane-tree]") {
  CHECK(chain(3).is_tube(single_vertex(1) | single_vertex(2)));
  CHECK_FALSE(claw(3).is_tube(single_vertex(1) | single_vertex(2)));
  CHECK(fig_tree().is_tube(single_vertex(0) | single_vertex(1) | single_vertex(4)));

  for (int n = 1; n <= 6; ++n)
    for (const PlaneTree& t : enumerate_trees(n)) {
      const VertexSet full = t.full_mask();
      for (VertexSet s = full;; s = (s - 1) & full) {
        if (s != 0 && t.is_tube(s)) {
          const int root = set_min(s);
          for (int v : set_vertices(s)) CHECK(t.tree_leq(root, v));
        }
        if (s == 0) break;
      }
    }
}

TEST_CASE("edge contraction splices children in place", "[plane-tree]") {
  CHECK(chain(2).contract_edge(1) == chain(1));
  CHECK(claw(3).contract_edge(2) == claw(2));
  CHECK(fig_tree().contract_edge(1) == claw(3));
  CHECK_THROWS_AS(chain(2).contract_edge(0), std::invalid_argument);
}

TEST_CASE("containment under contraction", "[plane-tree]") {
  const PlaneTree& f = fig_tree();
  CHECK(contains(f, f));
  CHECK_FALSE(contains(chain(4), f));
  CHECK(contains(PlaneTree::parse("((()()())())"), f));

  for (int n = 1; n <= 5; ++n)
    for (const PlaneTree& t : enumerate_trees(n))
      for (int v = 1; v <= n; ++v) CHECK(contains(t, t.contract_edge(v)));

  // Containing the branching witness is the same as having a vertex with two
  // children off the rightmost branch.
  for (int n = 1; n <= 5; ++n)
    for (const PlaneTree& t : enumerate_trees(n))
      CHECK(contains(t, f) == !unary_off_rightmost_branch(t));
}

TEST_CASE("rightmost branch", "[plane-tree]") {
  CHECK(chain(3).rightmost_branch() == std::vector<int>{0, 1, 2, 3});
  CHECK(claw(3).rightmost_branch() == std::vector<int>{0, 3});
  CHECK(fig_tree().rightmost_branch() == std::vector<int>{0, 4});
}

TEST_CASE("tree enumeration is Catalan and duplicate-free", "[plane-tree]") {
  CHECK(enumerate_trees(0).size() == 1);
  CHECK(enumerate_trees(3).size() == 5);
  CHECK(enumerate_trees(5).size() == 42);
  for (int n = 0; n <= 10; ++n) {
    const auto trees = enumerate_trees(n);
    CHECK(static_cast<long long>(trees.size()) == catalan(n));
    std::set<std::string> seen;
    for (const PlaneTree& t : trees) CHECK(seen.insert(t.render()).second);
  }
}

TEST_CASE("degree conditions", "[plane-tree]") {
  CHECK(unary_off_rightmost_branch(chain(5)));
  CHECK(unary_off_rightmost_branch(claw(5)));
  CHECK_FALSE(unary_off_rightmost_branch(fig_tree()));
  CHECK(root_branching_only(chain(4), 2));
  CHECK(root_branching_only(PlaneTree::parse("((())(()))"), 2));
  CHECK_FALSE(root_branching_only(claw(3), 2));
  CHECK_FALSE(root_branching_only(fig_tree(), 2));
}
