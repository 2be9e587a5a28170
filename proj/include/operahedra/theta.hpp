#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "operahedra/nesting.hpp"
#include "operahedra/plane_tree.hpp"
#include "operahedra/weak_words.hpp"

namespace operahedra {

/// Linear extension of the root-deleted forest, viewed as a word over 1..n.
struct LinearExtension {
  std::vector<int> word;
  bool operator==(const LinearExtension& o) const { return word == o.word; }
  bool operator!=(const LinearExtension& o) const { return !(*this == o); }
  bool operator<(const LinearExtension& o) const { return word < o.word; }
};

/// One ornament per non-root vertex, each hung at its vertex, pairwise
/// nested or disjoint. at[0] is unused.
struct Ornamentation {
  std::vector<VertexSet> at;
  bool operator==(const Ornamentation& o) const { return at == o.at; }
  bool operator!=(const Ornamentation& o) const { return !(*this == o); }
  bool operator<(const Ornamentation& o) const { return at < o.at; }
};

struct ThetaPair {
  LinearExtension lambda;
  Ornamentation rho;
  bool operator==(const ThetaPair& o) const { return lambda == o.lambda && rho == o.rho; }
  bool operator!=(const ThetaPair& o) const { return !(*this == o); }
  bool operator<(const ThetaPair& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return rho < o.rho;
  }
};

inline std::string theta_pair_to_string(const ThetaPair& p) {
  std::string s = word_to_string(p.lambda.word) + " |";
  for (std::size_t v = 1; v < p.rho.at.size(); ++v) {
    if (set_size(p.rho.at[v]) < 2) continue;
    s += " " + std::to_string(v) + ":" + tube_to_string(p.rho.at[v]);
  }
  return s;
}

inline bool is_linear_extension(const PlaneTree& t, const std::vector<int>& word) {
  if (static_cast<int>(word.size()) != t.n() || !is_permutation_word(word)) return false;
  const auto pos = word_positions(word);
  for (int v = 1; v <= t.n(); ++v) {
    const int p = t.parent(v);
    if (p != 0 && pos[static_cast<std::size_t>(p)] > pos[static_cast<std::size_t>(v)])
      return false;
  }
  return true;
}

namespace detail {

// Topological enumeration; extra edges add precedence constraints beyond the
// forest order. Words are produced in lexicographic order.
inline void extensions_rec(const PlaneTree& t, const std::vector<std::vector<int>>& preds,
                           std::vector<char>& placed, std::vector<int>& word,
                           std::vector<std::vector<int>>& out) {
  const int n = t.n();
  if (static_cast<int>(word.size()) == n) {
    out.push_back(word);
    return;
  }
  for (int v = 1; v <= n; ++v) {
    if (placed[static_cast<std::size_t>(v)]) continue;
    bool ready = true;
    for (int u : preds[static_cast<std::size_t>(v)])
      if (!placed[static_cast<std::size_t>(u)]) {
        ready = false;
        break;
      }
    if (!ready) continue;
    placed[static_cast<std::size_t>(v)] = 1;
    word.push_back(v);
    extensions_rec(t, preds, placed, word, out);
    word.pop_back();
    placed[static_cast<std::size_t>(v)] = 0;
  }
}

inline std::vector<std::vector<int>> extensions_with_constraints(
    const PlaneTree& t, const std::vector<std::pair<int, int>>& before) {
  const int n = t.n();
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n) + 1);
  for (int v = 1; v <= n; ++v) {
    const int p = t.parent(v);
    if (p != 0) preds[static_cast<std::size_t>(v)].push_back(p);
  }
  for (auto [a, b] : before) preds[static_cast<std::size_t>(b)].push_back(a);
  std::vector<char> placed(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> word;
  std::vector<std::vector<int>> out;
  extensions_rec(t, preds, placed, word, out);
  return out;
}

}  // namespace detail

inline std::vector<LinearExtension> enumerate_linear_extensions(const PlaneTree& t) {
  if (t.n() < 1) throw std::invalid_argument("extensions: need n >= 1");
  std::vector<LinearExtension> out;
  for (auto& w : detail::extensions_with_constraints(t, {})) out.push_back({std::move(w)});
  return out;
}

inline LinearExtension lambda_min(const PlaneTree& t) {
  std::vector<int> w(static_cast<std::size_t>(t.n()));
  for (int v = 1; v <= t.n(); ++v) w[static_cast<std::size_t>(v - 1)] = v;
  return {std::move(w)};
}

/// Weak-order maximum of the extension set: subtrees emitted right to left,
/// recursively, so every subtree stays a consecutive block.
inline LinearExtension lambda_max(const PlaneTree& t) {
  std::vector<int> w;
  auto rec = [&](auto&& self, int v) -> void {
    if (v != 0) w.push_back(v);
    const auto& ch = t.children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) self(self, *it);
  };
  rec(rec, 0);
  return {std::move(w)};
}

inline std::string ornamentation_violation(const PlaneTree& t, const Ornamentation& rho) {
  if (static_cast<int>(rho.at.size()) != t.n() + 1) return "ornament table has the wrong size";
  for (int v = 1; v <= t.n(); ++v) {
    const VertexSet o = rho.at[static_cast<std::size_t>(v)];
    if (!set_contains(o, v) || set_min(o) != v) return "an ornament is not hung at its vertex";
    if ((o & ~t.subtree_mask(v)) != 0 || !t.is_tube(o))
      return "an ornament is not connected below its vertex";
  }
  for (int v = 1; v <= t.n(); ++v)
    for (int w = v + 1; w <= t.n(); ++w)
      if (!nested_or_disjoint(rho.at[static_cast<std::size_t>(v)],
                              rho.at[static_cast<std::size_t>(w)]))
        return "two ornaments are neither nested nor disjoint";
  return {};
}

inline bool is_ornamentation(const PlaneTree& t, const Ornamentation& rho) {
  return ornamentation_violation(t, rho).empty();
}

inline Ornamentation rho_min(const PlaneTree& t) {
  Ornamentation r;
  r.at.assign(static_cast<std::size_t>(t.n()) + 1, 0);
  for (int v = 1; v <= t.n(); ++v) r.at[static_cast<std::size_t>(v)] = single_vertex(v);
  return r;
}

inline Ornamentation rho_max(const PlaneTree& t) {
  Ornamentation r;
  r.at.assign(static_cast<std::size_t>(t.n()) + 1, 0);
  for (int v = 1; v <= t.n(); ++v) r.at[static_cast<std::size_t>(v)] = t.subtree_mask(v);
  return r;
}

inline bool ornamentation_leq(const Ornamentation& a, const Ornamentation& b) {
  for (std::size_t v = 1; v < a.at.size(); ++v)
    if ((a.at[v] & ~b.at[v]) != 0) return false;
  return true;
}

/// Pointwise intersection.
inline Ornamentation ornamentation_meet(const PlaneTree& t, const Ornamentation& a,
                                        const Ornamentation& b) {
  Ornamentation r;
  r.at.assign(a.at.size(), 0);
  for (std::size_t v = 1; v < a.at.size(); ++v) r.at[v] = a.at[v] & b.at[v];
  require(is_ornamentation(t, r), "ornamentation meet left the lattice");
  return r;
}

/// Least upper bound: pointwise union closed under the nesting axiom
/// (whenever w lies inside the ornament at v, the ornament at w is absorbed).
inline Ornamentation ornamentation_join(const PlaneTree& t, const Ornamentation& a,
                                        const Ornamentation& b) {
  Ornamentation r;
  r.at.assign(a.at.size(), 0);
  for (std::size_t v = 1; v < a.at.size(); ++v) r.at[v] = a.at[v] | b.at[v];
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 1; v <= t.n(); ++v) {
      VertexSet& o = r.at[static_cast<std::size_t>(v)];
      for (VertexSet m = o & ~single_vertex(v); m != 0; m &= m - 1) {
        const int w = std::countr_zero(m);
        const VertexSet inner = r.at[static_cast<std::size_t>(w)];
        if ((inner & ~o) != 0) {
          o |= inner;
          changed = true;
        }
      }
    }
  }
  require(is_ornamentation(t, r), "ornamentation join closure left the lattice");
  return r;
}

/// All ornamentations of the root-deleted forest. Desk-scale enumeration
/// used by the ornamentation-lattice checks.
inline std::vector<Ornamentation> enumerate_ornamentations(const PlaneTree& t) {
  const int n = t.n();
  std::vector<std::vector<VertexSet>> candidates(static_cast<std::size_t>(n) + 1);
  for (int v = 1; v <= n; ++v) {
    const VertexSet sub = t.subtree_mask(v);
    for (VertexSet s = sub;; s = (s - 1) & sub) {
      if (set_contains(s, v) && t.is_tube(s) && set_min(s) == v)
        candidates[static_cast<std::size_t>(v)].push_back(s);
      if (s == 0) break;
    }
    std::sort(candidates[static_cast<std::size_t>(v)].begin(),
              candidates[static_cast<std::size_t>(v)].end());
  }
  std::vector<Ornamentation> out;
  Ornamentation cur;
  cur.at.assign(static_cast<std::size_t>(n) + 1, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == 0) {
      out.push_back(cur);
      return;
    }
    for (VertexSet s : candidates[static_cast<std::size_t>(v)]) {
      bool ok = true;
      // Only descendants can interact with the ornament at v.
      for (VertexSet m = t.subtree_mask(v) & ~single_vertex(v); m != 0 && ok; m &= m - 1) {
        const int w = std::countr_zero(m);
        const VertexSet ow = cur.at[static_cast<std::size_t>(w)];
        if (set_contains(s, w) ? (ow & ~s) != 0 : (ow & s) != 0) ok = false;
      }
      if (!ok) continue;
      cur.at[static_cast<std::size_t>(v)] = s;
      self(self, v - 1);
    }
    cur.at[static_cast<std::size_t>(v)] = 0;
  };
  rec(rec, n);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string theta_violation(const PlaneTree& t, const ThetaPair& p) {
  if (!is_linear_extension(t, p.lambda.word)) return "word is not a linear extension";
  std::string orn = ornamentation_violation(t, p.rho);
  if (!orn.empty()) return orn;
  const auto pos = word_positions(p.lambda.word);
  for (int v = 1; v <= t.n(); ++v) {
    const VertexSet o = p.rho.at[static_cast<std::size_t>(v)];
    int lo = t.n(), hi = -1;
    for (VertexSet m = o; m != 0; m &= m - 1) {
      const int w = std::countr_zero(m);
      lo = std::min(lo, pos[static_cast<std::size_t>(w)]);
      hi = std::max(hi, pos[static_cast<std::size_t>(w)]);
    }
    if (hi - lo + 1 != set_size(o)) return "an ornament is not a consecutive factor";
  }
  return {};
}

inline bool is_theta_pair(const PlaneTree& t, const ThetaPair& p) {
  return theta_violation(t, p).empty();
}

/// All ornamentations compatible with the extension: each window starts at
/// its vertex and extends by whole later-chosen blocks whose root hangs off
/// the window built so far.
inline std::vector<Ornamentation> compatible_ornamentations(const PlaneTree& t,
                                                            const LinearExtension& lambda) {
  const int n = t.n();
  const auto& word = lambda.word;
  std::vector<int> window_end(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> window_mask(static_cast<std::size_t>(n), 0);
  std::vector<Ornamentation> out;
  auto rec = [&](auto&& self, int i) -> void {
    if (i < 0) {
      Ornamentation r;
      r.at.assign(static_cast<std::size_t>(n) + 1, 0);
      for (int j = 0; j < n; ++j)
        r.at[static_cast<std::size_t>(word[static_cast<std::size_t>(j)])] =
            window_mask[static_cast<std::size_t>(j)];
      out.push_back(std::move(r));
      return;
    }
    const int v = word[static_cast<std::size_t>(i)];
    VertexSet m = single_vertex(v);
    int e = i;
    while (true) {
      window_end[static_cast<std::size_t>(i)] = e;
      window_mask[static_cast<std::size_t>(i)] = m;
      self(self, i - 1);
      if (e + 1 >= n) break;
      const int w = word[static_cast<std::size_t>(e + 1)];
      if (t.parent(w) == 0 || !set_contains(m, t.parent(w))) break;
      m |= window_mask[static_cast<std::size_t>(e + 1)];
      e = window_end[static_cast<std::size_t>(e + 1)];
    }
  };
  rec(rec, n - 1);
  std::sort(out.begin(), out.end());
  return out;
}

/// All of Theta, ordered by (extension lex, then ornament table).
inline std::vector<ThetaPair> enumerate_theta(const PlaneTree& t) {
  if (t.n() < 1) throw std::invalid_argument("theta: need n >= 1");
  std::vector<ThetaPair> out;
  for (auto& lam : detail::extensions_with_constraints(t, {})) {
    LinearExtension le{std::move(lam)};
    for (auto& rho : compatible_ornamentations(t, le)) out.push_back({le, std::move(rho)});
  }
  return out;
}

/// Componentwise order inherited from extensions-by-inversions and
/// ornamentations-by-containment.
inline bool theta_leq(const ThetaPair& a, const ThetaPair& b) {
  return ornamentation_leq(a.rho, b.rho) && inversions_subset(a.lambda.word, b.lambda.word);
}

/// Psi: ornament at v is the largest tube rooted at v (else the singleton);
/// the extension is the unique one making every tube consecutive, root
/// dropped.
inline ThetaPair psi(const PlaneTree& t, const Nesting& nest) {
  require(is_maximal_nesting(t, nest), "psi: input is not a maximal nesting");
  ThetaPair p;
  p.rho.at.assign(static_cast<std::size_t>(t.n()) + 1, 0);
  for (int v = 1; v <= t.n(); ++v) {
    VertexSet best = single_vertex(v);
    for (VertexSet tube : nest.tubes)
      if (set_min(tube) == v && set_size(tube) > set_size(best)) best = tube;
    p.rho.at[static_cast<std::size_t>(v)] = best;
  }

  std::vector<int> word;
  auto rec = [&](auto&& self, VertexSet region) -> void {
    const int r = set_min(region);
    word.push_back(r);
    std::vector<VertexSet> chain;
    for (VertexSet tube : nest.tubes)
      if ((tube & region) == tube && set_contains(tube, r)) chain.push_back(tube);
    std::sort(chain.begin(), chain.end(),
              [](VertexSet a, VertexSet b) { return set_size(a) < set_size(b); });
    VertexSet prev = single_vertex(r);
    for (VertexSet tube : chain) {
      VertexSet block = tube & ~prev;
      if (block != 0) self(self, block);
      prev = tube;
    }
    require(prev == region, "psi: nesting does not order a region");
  };
  rec(rec, t.full_mask());
  require(word.front() == 0, "psi: extension must start at the root");
  p.lambda.word.assign(word.begin() + 1, word.end());
  require(is_theta_pair(t, p), "psi produced an invalid pair");
  return p;
}

/// Inverse of Psi: maximal ornaments in extension order give the tubes
/// hanging from the region root; recurse inside each ornament.
inline Nesting psi_inverse(const PlaneTree& t, const ThetaPair& p) {
  require(is_theta_pair(t, p), "psi_inverse: invalid pair");
  Nesting out;
  auto rec = [&](auto&& self, const std::vector<int>& region, int root) -> void {
    std::vector<int> maximal;
    for (int v : region) {
      bool maxi = true;
      for (int w : region)
        if (w != v && set_contains(p.rho.at[static_cast<std::size_t>(w)], v)) {
          maxi = false;
          break;
        }
      if (maxi) maximal.push_back(v);
    }
    VertexSet prefix = single_vertex(root);
    for (int v : maximal) {
      prefix |= p.rho.at[static_cast<std::size_t>(v)];
      out.tubes.push_back(prefix);
    }
    for (int v : maximal) {
      const VertexSet orn = p.rho.at[static_cast<std::size_t>(v)];
      if (set_size(orn) >= 2) {
        std::vector<int> sub;
        for (int w : region)
          if (w != v && set_contains(orn, w)) sub.push_back(w);
        self(self, sub, v);
      }
    }
  };
  rec(rec, p.lambda.word, 0);
  out.canonicalize();
  require(is_maximal_nesting(t, out), "psi_inverse produced an invalid nesting");
  return out;
}

struct CoverMove {
  ThetaPair lower, upper;
  MoveKind kind = MoveKind::associahedron;
  // permutohedron: (a, b) = the swapped block owners (p, q);
  // associahedron: (a, b) = (t, t_next).
  int a = 0, b = 0;
};

namespace detail {

inline std::vector<int> swap_adjacent_blocks(const std::vector<int>& word, int s1, int len1,
                                             int len2) {
  std::vector<int> out(word.begin(), word.begin() + s1);
  out.insert(out.end(), word.begin() + s1 + len1, word.begin() + s1 + len1 + len2);
  out.insert(out.end(), word.begin() + s1, word.begin() + s1 + len1);
  out.insert(out.end(), word.begin() + s1 + len1 + len2, word.end());
  return out;
}

}  // namespace detail

/// All upper covers, generated as candidate moves and kept when the full
/// pair invariants hold.
inline std::vector<CoverMove> theta_covers(const PlaneTree& t, const ThetaPair& p) {
  require(is_theta_pair(t, p), "theta_covers: invalid pair");
  const int n = t.n();
  const auto& word = p.lambda.word;
  std::vector<CoverMove> out;
  for (int idx = 0; idx < n; ++idx) {
    const int v = word[static_cast<std::size_t>(idx)];
    const int len = set_size(p.rho.at[static_cast<std::size_t>(v)]);
    const int after = idx + len;
    if (after >= n) continue;
    const int next = word[static_cast<std::size_t>(after)];

    // Grow the ornament at v by the whole block of next.
    if (t.parent(next) != 0 && set_contains(p.rho.at[static_cast<std::size_t>(v)], t.parent(next))) {
      ThetaPair up = p;
      up.rho.at[static_cast<std::size_t>(v)] |= p.rho.at[static_cast<std::size_t>(next)];
      if (is_theta_pair(t, up)) {
        CoverMove m;
        m.lower = p;
        m.upper = std::move(up);
        m.kind = MoveKind::associahedron;
        m.a = v;
        m.b = next;
        out.push_back(std::move(m));
      }
    }

    // Swap the adjacent blocks of v and next.
    const bool incomparable = !t.tree_leq(v, next) && !t.tree_leq(next, v);
    if (incomparable && v < next &&
        set_max(p.rho.at[static_cast<std::size_t>(v)]) < set_min(p.rho.at[static_cast<std::size_t>(next)])) {
      ThetaPair up;
      up.lambda.word = detail::swap_adjacent_blocks(
          word, idx, len, set_size(p.rho.at[static_cast<std::size_t>(next)]));
      up.rho = p.rho;
      if (is_theta_pair(t, up)) {
        CoverMove m;
        m.lower = p;
        m.upper = std::move(up);
        m.kind = MoveKind::permutohedron;
        m.a = v;
        m.b = next;
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

/// Recover the move data of a cover pair.
inline CoverMove classify_cover(const PlaneTree& t, const ThetaPair& lower,
                                const ThetaPair& upper) {
  require(is_theta_pair(t, lower) && is_theta_pair(t, upper), "classify_cover: invalid pair");
  CoverMove m;
  m.lower = lower;
  m.upper = upper;
  if (lower.lambda == upper.lambda) {
    require(lower.rho != upper.rho, "classify_cover: pairs are equal");
    int grown = 0;
    for (int v = 1; v <= t.n(); ++v)
      if (lower.rho.at[static_cast<std::size_t>(v)] != upper.rho.at[static_cast<std::size_t>(v)]) {
        require(grown == 0, "classify_cover: more than one ornament changed");
        grown = v;
      }
    const auto pos = word_positions(lower.lambda.word);
    const int after = pos[static_cast<std::size_t>(grown)] +
                      set_size(lower.rho.at[static_cast<std::size_t>(grown)]);
    require(after < t.n(), "classify_cover: grown ornament has no successor block");
    const int next = lower.lambda.word[static_cast<std::size_t>(after)];
    require(upper.rho.at[static_cast<std::size_t>(grown)] ==
                (lower.rho.at[static_cast<std::size_t>(grown)] |
                 lower.rho.at[static_cast<std::size_t>(next)]),
            "classify_cover: not a single block growth");
    m.kind = MoveKind::associahedron;
    m.a = grown;
    m.b = next;
    return m;
  }
  require(lower.rho == upper.rho, "classify_cover: both components changed");
  int d = 0;
  while (lower.lambda.word[static_cast<std::size_t>(d)] ==
         upper.lambda.word[static_cast<std::size_t>(d)])
    ++d;
  const int p = lower.lambda.word[static_cast<std::size_t>(d)];
  const int q = upper.lambda.word[static_cast<std::size_t>(d)];
  const auto rebuilt = detail::swap_adjacent_blocks(
      lower.lambda.word, d, set_size(lower.rho.at[static_cast<std::size_t>(p)]),
      set_size(lower.rho.at[static_cast<std::size_t>(q)]));
  require(rebuilt == upper.lambda.word, "classify_cover: not a single block swap");
  m.kind = MoveKind::permutohedron;
  m.a = p;
  m.b = q;
  return m;
}

/// Least upper bound of two covers of a common element, by the explicit
/// three-case construction.
inline ThetaPair join_of_covers(const PlaneTree& t, const ThetaPair& p0, const ThetaPair& p1,
                                const ThetaPair& p2) {
  if (p1 == p2) throw std::invalid_argument("join_of_covers: the covers must be distinct");
  CoverMove m1 = classify_cover(t, p0, p1);
  CoverMove m2 = classify_cover(t, p0, p2);

  ThetaPair result;
  if (m1.kind == MoveKind::permutohedron && m2.kind == MoveKind::permutohedron) {
    result.lambda.word = weak_join_words(p1.lambda.word, p2.lambda.word);
    result.rho = p0.rho;
  } else if (m1.kind == MoveKind::associahedron && m2.kind == MoveKind::associahedron) {
    result.lambda = p0.lambda;
    result.rho = ornamentation_join(t, p1.rho, p2.rho);
  } else {
    const CoverMove& perm = m1.kind == MoveKind::permutohedron ? m1 : m2;
    const CoverMove& assoc = m1.kind == MoveKind::permutohedron ? m2 : m1;
    const ThetaPair& perm_upper = m1.kind == MoveKind::permutohedron ? p1 : p2;
    const ThetaPair& assoc_upper = m1.kind == MoveKind::permutohedron ? p2 : p1;
    const int p = perm.a, q = perm.b, tv = assoc.a, tn = assoc.b;
    const auto pos = word_positions(p0.lambda.word);
    if (p != tv && p != tn && q != tv && q != tn) {
      result.lambda = perm_upper.lambda;
      result.rho = assoc_upper.rho;
    } else if (q == tv) {
      result.lambda.word = detail::swap_adjacent_blocks(
          p0.lambda.word, pos[static_cast<std::size_t>(p)],
          set_size(p0.rho.at[static_cast<std::size_t>(p)]),
          set_size(assoc_upper.rho.at[static_cast<std::size_t>(tv)]));
      result.rho = assoc_upper.rho;
    } else if (p == tn && !t.tree_leq(tv, q)) {
      result.lambda.word = detail::swap_adjacent_blocks(
          p0.lambda.word, pos[static_cast<std::size_t>(tv)],
          set_size(assoc_upper.rho.at[static_cast<std::size_t>(tv)]),
          set_size(p0.rho.at[static_cast<std::size_t>(q)]));
      result.rho = assoc_upper.rho;
    } else if (p == tn) {
      result.lambda = perm_upper.lambda;
      result.rho = p0.rho;
      result.rho.at[static_cast<std::size_t>(tv)] |=
          p0.rho.at[static_cast<std::size_t>(p)] | p0.rho.at[static_cast<std::size_t>(q)];
    } else {
      require(false, "join_of_covers: impossible witness overlap");
    }
  }
  require(is_theta_pair(t, result), "join_of_covers: constructed pair is invalid");
  require(theta_leq(p1, result) && theta_leq(p2, result),
          "join_of_covers: constructed pair is not an upper bound");
  return result;
}

struct PermMoveFrames {
  std::vector<int> x, y, z_left, z_right;
};

/// Frame sets of a permutohedron cover, computed from the two extensions and
/// the witness vertices alone.
inline PermMoveFrames perm_move_frames(const std::vector<int>& lambda1,
                                       const std::vector<int>& lambda2, int p, int q, int u,
                                       int z) {
  require(lambda1.size() == lambda2.size(), "frames: words must have equal length");
  require(z <= p && p < q && p <= u, "frames: inconsistent witness vertices");
  const auto pos1 = word_positions(lambda1);
  const auto pos2 = word_positions(lambda2);
  PermMoveFrames f;
  for (int v = z; v < q; ++v) {
    if (pos1[static_cast<std::size_t>(v)] < pos1[static_cast<std::size_t>(q)])
      f.x.push_back(v);
    else
      f.y.push_back(v);
  }
  for (int i = u; i <= q; ++i) {
    if (pos2[static_cast<std::size_t>(i)] <= pos2[static_cast<std::size_t>(q)])
      f.z_left.push_back(i);
    if (pos2[static_cast<std::size_t>(u)] <= pos2[static_cast<std::size_t>(i)])
      f.z_right.push_back(i);
  }
  return f;
}

/// 1..(u-1), Z_L ascending, Z_R ascending, (q+1)..n.
inline std::vector<int> assemble_frame_word(int u, int q, int n, const std::vector<int>& z_left,
                                            const std::vector<int>& z_right) {
  std::vector<int> w;
  for (int i = 1; i < u; ++i) w.push_back(i);
  w.insert(w.end(), z_left.begin(), z_left.end());
  w.insert(w.end(), z_right.begin(), z_right.end());
  for (int i = q + 1; i <= n; ++i) w.push_back(i);
  require(is_permutation_word(w), "frame word assembly is not a permutation");
  return w;
}

class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// Unique maximal element of up(lower) \ up(upper) for a cover move.
/// Associahedron moves work on every tree; permutohedron moves require that
/// every vertex off the rightmost branch has at most one child.
inline ThetaPair forced_max_of_difference(const PlaneTree& t, const CoverMove& m) {
  const int n = t.n();
  const auto& lambda1 = m.lower.lambda.word;
  const auto pos1 = word_positions(lambda1);

  if (m.kind == MoveKind::associahedron) {
    const int tv = m.a, tn = m.b;
    VertexSet a_set = 0;
    for (VertexSet cand = t.subtree_mask(tv) & ~t.subtree_mask(tn); cand != 0; cand &= cand - 1) {
      const int a = std::countr_zero(cand);
      // Inversions are ordered pairs (i, j) with i < j, so only a < t_next
      // can be excluded by the inversion condition.
      if (!(a < tn && pair_inverted(pos1, a, tn))) a_set |= single_vertex(a);
    }
    ThetaPair star;
    star.rho.at.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v)
      star.rho.at[static_cast<std::size_t>(v)] =
          set_contains(a_set, v) ? (t.subtree_mask(v) & a_set) : t.subtree_mask(v);
    if (!is_ornamentation(t, star.rho))
      throw ConstructionError("forced max: constructed ornamentation is invalid");
    // lambda*: the unique weak-order maximum among extensions carrying rho*.
    std::optional<std::vector<int>> best;
    for (auto& sigma : detail::extensions_with_constraints(t, {})) {
      star.lambda.word = sigma;
      if (!is_theta_pair(t, star)) continue;
      if (!best || inversion_count(sigma) > inversion_count(*best)) best = std::move(sigma);
    }
    if (!best) throw ConstructionError("forced max: no extension carries the ornamentation");
    star.lambda.word = *best;
    for (auto& sigma : detail::extensions_with_constraints(t, {})) {
      ThetaPair probe{LinearExtension{sigma}, star.rho};
      if (is_theta_pair(t, probe) && !inversions_subset(sigma, *best))
        throw ConstructionError("forced max: compatible extensions have no unique maximum");
    }
    require(is_theta_pair(t, star), "forced max: constructed pair is invalid");
    return star;
  }

  if (!unary_off_rightmost_branch(t))
    throw std::invalid_argument(
        "forced max for permutohedron moves needs every off-branch vertex unary");
  const int p = m.a, q = m.b;
  const VertexSet branch = t.rightmost_branch_mask();
  require(!set_contains(branch, p), "forced max: swap owner lies on the rightmost branch");
  VertexSet c_set = 0;
  for (int v = 1; v <= n; ++v)
    if (!set_contains(branch, v) && t.tree_leq(v, p)) c_set |= single_vertex(v);
  if (c_set == 0)
    throw ConstructionError("forced max: off-branch chain below the swap owner is empty");
  const int z = set_min(c_set);
  const int u = set_max(m.lower.rho.at[static_cast<std::size_t>(p)]);
  PermMoveFrames f = perm_move_frames(lambda1, m.upper.lambda.word, p, q, u, z);

  VertexSet x_set = 0, y_set = 0;
  for (int v : f.x) x_set |= single_vertex(v);
  for (int v : f.y) y_set |= single_vertex(v);

  ThetaPair star;
  star.rho.at.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v)
    star.rho.at[static_cast<std::size_t>(v)] =
        set_contains(x_set, v) ? (t.subtree_mask(v) & ~(t.subtree_mask(q) | y_set))
                               : t.subtree_mask(v);
  require(is_ornamentation(t, star.rho), "forced max: frame ornamentation is invalid");

  // Xi: extensions with X before the block of q before Y; take its unique
  // weak-order maximum.
  std::vector<std::pair<int, int>> before;
  const VertexSet q_block = m.lower.rho.at[static_cast<std::size_t>(q)];
  for (int x : f.x)
    for (VertexSet mm = q_block; mm != 0; mm &= mm - 1) before.emplace_back(x, std::countr_zero(mm));
  for (int y : f.y)
    for (VertexSet mm = q_block; mm != 0; mm &= mm - 1) before.emplace_back(std::countr_zero(mm), y);
  auto xi = detail::extensions_with_constraints(t, before);
  if (xi.empty()) throw ConstructionError("forced max: constrained extension set is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < xi.size(); ++i)
    if (inversion_count(xi[i]) > inversion_count(xi[best])) best = i;
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (!inversions_subset(xi[i], xi[best]))
      throw ConstructionError("forced max: constrained extension set has no unique maximum");
  star.lambda.word = xi[best];
  if (!is_theta_pair(t, star)) throw ConstructionError("forced max: constructed pair is invalid");
  return star;
}

/// Unique minimal element of down(upper) \ down(lower) for a cover move.
inline ThetaPair forced_min_of_difference(const PlaneTree& t, const CoverMove& m) {
  const int n = t.n();
  if (m.kind == MoveKind::associahedron) {
    const int tv = m.a, tn = m.b;
    ThetaPair star;
    star.rho = rho_min(t);
    VertexSet o = single_vertex(tn);
    for (VertexSet mm = m.lower.rho.at[static_cast<std::size_t>(tv)]; mm != 0; mm &= mm - 1) {
      const int x = std::countr_zero(mm);
      if (x < tn) o |= single_vertex(x);
    }
    star.rho.at[static_cast<std::size_t>(tv)] = o;
    std::vector<int> w;
    for (int i = 1; i < tv; ++i) w.push_back(i);
    for (VertexSet mm = o; mm != 0; mm &= mm - 1) w.push_back(std::countr_zero(mm));
    for (int i = tv; i <= n; ++i)
      if (!set_contains(o, i)) w.push_back(i);
    star.lambda.word = std::move(w);
    if (!is_theta_pair(t, star)) throw ConstructionError("forced min: constructed pair is invalid");
    return star;
  }

  if (!unary_off_rightmost_branch(t))
    throw std::invalid_argument(
        "forced min for permutohedron moves needs every off-branch vertex unary");
  const int p = m.a, q = m.b;
  const int u = set_max(m.lower.rho.at[static_cast<std::size_t>(p)]);
  const auto pos2 = word_positions(m.upper.lambda.word);
  std::vector<int> z_left, z_right;
  for (int i = u; i <= q; ++i) {
    const bool left = pos2[static_cast<std::size_t>(i)] <= pos2[static_cast<std::size_t>(q)];
    const bool right = pos2[static_cast<std::size_t>(u)] <= pos2[static_cast<std::size_t>(i)];
    require(left != right, "forced min: frame sets do not split the interval");
    (left ? z_left : z_right).push_back(i);
  }
  ThetaPair star;
  star.rho = rho_min(t);
  star.lambda.word = assemble_frame_word(u, q, n, z_left, z_right);
  if (!is_theta_pair(t, star)) throw ConstructionError("forced min: constructed pair is invalid");
  return star;
}

}  // namespace operahedra
