#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "operahedra/util.hpp"

namespace operahedra {

// Vertex sets over at most 64 vertices, one bit per preorder label.
using VertexSet = std::uint64_t;

inline constexpr int kMaxVertices = 64;

inline int set_size(VertexSet s) { return std::popcount(s); }
inline int set_min(VertexSet s) { return std::countr_zero(s); }
inline int set_max(VertexSet s) { return 63 - std::countl_zero(s); }
inline bool set_contains(VertexSet s, int v) { return (s >> v) & VertexSet{1}; }
inline VertexSet single_vertex(int v) { return VertexSet{1} << v; }

inline std::vector<int> set_vertices(VertexSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  for (VertexSet m = s; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

// Lexicographic order on the sorted member lists: the set that owns the
// smallest element of the symmetric difference comes first.
inline bool set_lex_less(VertexSet a, VertexSet b) {
  VertexSet d = a ^ b;
  if (d == 0) return false;
  return set_contains(a, std::countr_zero(d));
}

class TreeParseError : public std::runtime_error {
 public:
  TreeParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Rooted plane tree on vertices 0..n. Labels always equal the preorder
/// traversal: vertex 0 is the root, the first child of v is v+1, and every
/// subtree occupies a contiguous label block. The label sequence is derived
/// data; serialized forms carry only the shape.
class PlaneTree {
 public:
  explicit PlaneTree(std::vector<std::vector<int>> children)
      : children_(std::move(children)) {
    const int m = static_cast<int>(children_.size());
    if (m == 0) throw std::invalid_argument("tree must have at least one vertex");
    if (m > kMaxVertices)
      throw std::invalid_argument("tree exceeds the 64-vertex representation limit");
    parent_.assign(static_cast<std::size_t>(m), -1);
    size_.assign(static_cast<std::size_t>(m), 0);
    if (walk(0) != m)
      throw std::invalid_argument("children lists do not describe one preorder-labeled tree");
  }

  static PlaneTree parse(std::string_view text);

  std::string render() const {
    std::string out;
    render_vertex(0, out);
    return out;
  }

  int vertex_count() const { return static_cast<int>(children_.size()); }
  int n() const { return vertex_count() - 1; }

  const std::vector<int>& children(int v) const { return children_.at(static_cast<std::size_t>(v)); }
  int parent(int v) const { return parent_.at(static_cast<std::size_t>(v)); }
  int subtree_size(int v) const { return size_.at(static_cast<std::size_t>(v)); }

  // Subtrees are contiguous preorder blocks [v, v + size).
  VertexSet subtree_mask(int v) const {
    const int s = subtree_size(v);
    VertexSet block = (s == kMaxVertices) ? ~VertexSet{0} : ((VertexSet{1} << s) - 1);
    return block << v;
  }

  VertexSet full_mask() const { return subtree_mask(0); }

  // a <=_T b
  bool tree_leq(int a, int b) const { return a <= b && b < a + subtree_size(a); }

  bool is_tube(VertexSet s) const {
    if (s == 0 || (s & ~full_mask()) != 0) return false;
    const int root = set_min(s);
    for (VertexSet m = s & (s - 1); m != 0; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (v == root) continue;
      if (parent(v) < 0 || !set_contains(s, parent(v))) return false;
    }
    return true;
  }

  std::vector<int> rightmost_branch() const {
    std::vector<int> out;
    int v = 0;
    out.push_back(v);
    while (!children(v).empty()) {
      v = children(v).back();
      out.push_back(v);
    }
    return out;
  }

  VertexSet rightmost_branch_mask() const {
    VertexSet s = 0;
    for (int v : rightmost_branch()) s |= single_vertex(v);
    return s;
  }

  /// Merge non-root v into its parent, splicing v's children into the
  /// parent's list at v's position; the result is relabeled by preorder.
  PlaneTree contract_edge(int v) const {
    if (v <= 0 || v > n())
      throw std::invalid_argument("contract_edge: vertex must be a non-root vertex");
    std::vector<std::vector<int>> merged(children_);
    const int p = parent(v);
    auto& plist = merged[static_cast<std::size_t>(p)];
    auto it = std::find(plist.begin(), plist.end(), v);
    it = plist.erase(it);
    plist.insert(it, merged[static_cast<std::size_t>(v)].begin(),
                 merged[static_cast<std::size_t>(v)].end());
    merged[static_cast<std::size_t>(v)].clear();

    std::vector<std::vector<int>> out(static_cast<std::size_t>(vertex_count() - 1));
    int next = 0;
    auto relabel = [&](auto&& self, int old) -> int {
      const int label = next++;
      for (int oc : merged[static_cast<std::size_t>(old)])
        out[static_cast<std::size_t>(label)].push_back(self(self, oc));
      return label;
    };
    relabel(relabel, 0);
    return PlaneTree(std::move(out));
  }

  bool operator==(const PlaneTree& o) const { return children_ == o.children_; }
  bool operator!=(const PlaneTree& o) const { return !(*this == o); }

 private:
  int walk(int v) {
    int size = 1;
    for (int c : children_[static_cast<std::size_t>(v)]) {
      if (c != v + size)
        throw std::invalid_argument("children lists do not describe one preorder-labeled tree");
      parent_[static_cast<std::size_t>(c)] = v;
      size += walk(c);
    }
    size_[static_cast<std::size_t>(v)] = size;
    return size;
  }

  void render_vertex(int v, std::string& out) const {
    out.push_back('(');
    for (int c : children_[static_cast<std::size_t>(v)]) render_vertex(c, out);
    out.push_back(')');
  }

  std::vector<std::vector<int>> children_;
  std::vector<int> parent_;
  std::vector<int> size_;
};

inline PlaneTree PlaneTree::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw TreeParseError("empty tree text", pos);

  std::vector<std::vector<int>> children;
  std::vector<int> stack;
  bool done = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!stack.empty()) throw TreeParseError("whitespace inside tree text", pos);
      continue;
    }
    if (done) throw TreeParseError("text after the root group", pos);
    if (c == '(') {
      const int v = static_cast<int>(children.size());
      if (v >= kMaxVertices) throw TreeParseError("tree exceeds the 64-vertex limit", pos);
      children.emplace_back();
      if (!stack.empty()) children[static_cast<std::size_t>(stack.back())].push_back(v);
      stack.push_back(v);
    } else if (c == ')') {
      if (stack.empty()) throw TreeParseError("unbalanced ')'", pos);
      stack.pop_back();
      if (stack.empty()) done = true;
    } else {
      throw TreeParseError("unexpected character", pos);
    }
  }
  if (!stack.empty()) throw TreeParseError("unbalanced '(': input ended early", text.size());
  return PlaneTree(std::move(children));
}

inline PlaneTree chain(int n) {
  if (n < 0) throw std::invalid_argument("chain: n must be >= 0");
  std::vector<std::vector<int>> ch(static_cast<std::size_t>(n + 1));
  for (int v = 0; v < n; ++v) ch[static_cast<std::size_t>(v)].push_back(v + 1);
  return PlaneTree(std::move(ch));
}

inline PlaneTree claw(int n) {
  if (n < 0) throw std::invalid_argument("claw: n must be >= 0");
  std::vector<std::vector<int>> ch(static_cast<std::size_t>(n + 1));
  for (int v = 1; v <= n; ++v) ch[0].push_back(v);
  return PlaneTree(std::move(ch));
}

/// Chain 0..(n-k) whose top vertex carries k leaf children n-k+1..n.
inline PlaneTree broom(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("broom: need 1 <= k <= n");
  std::vector<std::vector<int>> ch(static_cast<std::size_t>(n + 1));
  const int handle_top = n - k;
  for (int v = 0; v < handle_top; ++v) ch[static_cast<std::size_t>(v)].push_back(v + 1);
  for (int v = handle_top + 1; v <= n; ++v) ch[static_cast<std::size_t>(handle_top)].push_back(v);
  return PlaneTree(std::move(ch));
}

namespace detail {

inline void forest_shapes(int m, std::vector<std::vector<std::string>>& tree_memo,
                          std::vector<std::vector<std::string>>& forest_memo);

inline void tree_shapes(int m, std::vector<std::vector<std::string>>& tree_memo,
                        std::vector<std::vector<std::string>>& forest_memo) {
  auto& slot = tree_memo[static_cast<std::size_t>(m)];
  if (!slot.empty() || m == 0) return;
  forest_shapes(m - 1, tree_memo, forest_memo);
  for (const std::string& f : forest_memo[static_cast<std::size_t>(m - 1)])
    slot.push_back("(" + f + ")");
}

inline void forest_shapes(int m, std::vector<std::vector<std::string>>& tree_memo,
                          std::vector<std::vector<std::string>>& forest_memo) {
  auto& slot = forest_memo[static_cast<std::size_t>(m)];
  if (!slot.empty()) return;
  if (m == 0) {
    slot.push_back("");
    return;
  }
  for (int s = 1; s <= m; ++s) {
    tree_shapes(s, tree_memo, forest_memo);
    forest_shapes(m - s, tree_memo, forest_memo);
    for (const std::string& first : tree_memo[static_cast<std::size_t>(s)])
      for (const std::string& rest : forest_memo[static_cast<std::size_t>(m - s)])
        slot.push_back(first + rest);
  }
}

}  // namespace detail

/// All of PT_n exactly once, in a fixed canonical order (first-subtree size
/// ascending, recursively).
inline std::vector<PlaneTree> enumerate_trees(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_trees: n must be >= 0");
  std::vector<std::vector<std::string>> tree_memo(static_cast<std::size_t>(n + 2));
  std::vector<std::vector<std::string>> forest_memo(static_cast<std::size_t>(n + 2));
  detail::tree_shapes(n + 1, tree_memo, forest_memo);
  std::vector<PlaneTree> out;
  out.reserve(tree_memo[static_cast<std::size_t>(n + 1)].size());
  for (const std::string& s : tree_memo[static_cast<std::size_t>(n + 1)])
    out.push_back(PlaneTree::parse(s));
  return out;
}

/// True iff some sequence of edge contractions of big yields small.
/// Memoized breadth-first search over contraction results.
inline bool contains(const PlaneTree& big, const PlaneTree& small) {
  if (small.vertex_count() > big.vertex_count()) return false;
  const std::string target = small.render();
  std::unordered_set<std::string> seen;
  std::vector<PlaneTree> frontier;
  frontier.push_back(big);
  seen.insert(big.render());
  if (big.render() == target) return true;
  while (!frontier.empty()) {
    PlaneTree t = std::move(frontier.back());
    frontier.pop_back();
    if (t.vertex_count() <= small.vertex_count()) continue;
    for (int v = 1; v <= t.n(); ++v) {
      PlaneTree c = t.contract_edge(v);
      std::string key = c.render();
      if (key == target) return true;
      if (seen.insert(std::move(key)).second) frontier.push_back(std::move(c));
    }
  }
  return false;
}

/// Every vertex outside the rightmost branch has at most one child.
inline bool unary_off_rightmost_branch(const PlaneTree& t) {
  const VertexSet branch = t.rightmost_branch_mask();
  for (int v = 0; v <= t.n(); ++v)
    if (!set_contains(branch, v) && t.children(v).size() > 1) return false;
  return true;
}

/// Root has at most root_limit children and every non-root vertex has at
/// most one child.
inline bool root_branching_only(const PlaneTree& t, int root_limit) {
  if (static_cast<int>(t.children(0).size()) > root_limit) return false;
  for (int v = 1; v <= t.n(); ++v)
    if (t.children(v).size() > 1) return false;
  return true;
}

}  // namespace operahedra
