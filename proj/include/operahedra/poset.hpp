#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "operahedra/util.hpp"

namespace operahedra {

class PosetSizeError : public std::runtime_error {
 public:
  explicit PosetSizeError(const std::string& what) : std::runtime_error(what) {}
};

class NotLatticeError : public std::runtime_error {
 public:
  explicit NotLatticeError(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-width bit row used for reachability sets.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(int n) : words_((static_cast<std::size_t>(n) + 63) / 64, 0), n_(n) {}

  void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }
  BitRow& operator|=(const BitRow& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  BitRow intersect(const BitRow& o) const {
    BitRow r(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] & o.words_[w];
    return r;
  }
  BitRow minus(const BitRow& o) const {
    BitRow r(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] & ~o.words_[w];
    return r;
  }
  bool subset_of(const BitRow& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }
  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
      for (std::uint64_t w = words_[wi]; w != 0; w &= w - 1)
        out.push_back(static_cast<int>(wi * 64) + std::countr_zero(w));
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
  int n_ = 0;
};

/// Explicit finite poset: an element list plus transitively reduced Hasse
/// covers. Reachability is precomputed as dense bit rows; analyses refuse
/// posets beyond 4096 elements.
class FinitePoset {
 public:
  static constexpr int kMaxElements = 4096;

  FinitePoset(int count, std::vector<std::pair<int, int>> covers,
              std::vector<std::string> labels = {})
      : count_(count), covers_(std::move(covers)), labels_(std::move(labels)) {
    if (count_ < 0) throw std::invalid_argument("poset: negative element count");
    if (count_ > kMaxElements)
      throw PosetSizeError("poset has " + std::to_string(count_) +
                           " elements; the analysis limit is " + std::to_string(kMaxElements));
    if (!labels_.empty() && static_cast<int>(labels_.size()) != count_)
      throw std::invalid_argument("poset: label count mismatch");
    std::sort(covers_.begin(), covers_.end());
    covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
    up_covers_.assign(static_cast<std::size_t>(count_), {});
    down_covers_.assign(static_cast<std::size_t>(count_), {});
    for (auto [a, b] : covers_) {
      if (a < 0 || a >= count_ || b < 0 || b >= count_ || a == b)
        throw std::invalid_argument("poset: bad cover pair");
      up_covers_[static_cast<std::size_t>(a)].push_back(b);
      down_covers_[static_cast<std::size_t>(b)].push_back(a);
    }
    topo_ = topological_order();
    build_closure();
    check_reduced();
  }

  int size() const { return count_; }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::string& label(int i) const {
    static const std::string empty;
    return labels_.empty() ? empty : labels_[static_cast<std::size_t>(i)];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  bool leq(int x, int y) const {
    check_element(x);
    check_element(y);
    return up_[static_cast<std::size_t>(x)].test(y);
  }

  const std::vector<int>& up_covers(int x) const { return up_covers_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& down_covers(int x) const {
    return down_covers_[static_cast<std::size_t>(x)];
  }
  const BitRow& up_set(int x) const { return up_[static_cast<std::size_t>(x)]; }
  const BitRow& down_set(int x) const { return down_[static_cast<std::size_t>(x)]; }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < count_; ++i)
      if (down_covers_[static_cast<std::size_t>(i)].empty()) out.push_back(i);
    return out;
  }
  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < count_; ++i)
      if (up_covers_[static_cast<std::size_t>(i)].empty()) out.push_back(i);
    return out;
  }

  std::optional<int> bottom() const {
    auto m = minimal_elements();
    if (m.size() == 1) return m[0];
    return std::nullopt;
  }
  std::optional<int> top() const {
    auto m = maximal_elements();
    if (m.size() == 1) return m[0];
    return std::nullopt;
  }

  // Longest chain (in edges) from a minimal element up to x.
  int element_height(int x) const { return height_[static_cast<std::size_t>(x)]; }
  // Longest chain from x up to a maximal element.
  int element_depth(int x) const { return depth_[static_cast<std::size_t>(x)]; }

  /// Maximum chain length of the whole poset.
  int height() const {
    int h = 0;
    for (int x : height_) h = std::max(h, x);
    return h;
  }

  /// Unique maximal element of the subset given as a bit row, if any.
  /// z is maximal in S exactly when up(z) meets S in {z} alone.
  std::optional<int> unique_maximal_in(const BitRow& s) const {
    std::optional<int> found;
    for (int z : s.members()) {
      if (up_[static_cast<std::size_t>(z)].intersect(s).count() != 1) continue;
      if (found) return std::nullopt;
      found = z;
    }
    return found;
  }

  std::optional<int> unique_minimal_in(const BitRow& s) const {
    std::optional<int> found;
    for (int z : s.members()) {
      if (down_[static_cast<std::size_t>(z)].intersect(s).count() != 1) continue;
      if (found) return std::nullopt;
      found = z;
    }
    return found;
  }

  /// Induced subposet [x, y]; element order follows the ambient indices.
  FinitePoset interval(int x, int y) const {
    check_element(x);
    check_element(y);
    if (!leq(x, y)) throw std::invalid_argument("interval: x is not below y");
    std::vector<int> members;
    std::vector<int> where(static_cast<std::size_t>(count_), -1);
    for (int z = 0; z < count_; ++z)
      if (leq(x, z) && leq(z, y)) {
        where[static_cast<std::size_t>(z)] = static_cast<int>(members.size());
        members.push_back(z);
      }
    std::vector<std::pair<int, int>> cov;
    for (auto [a, b] : covers_)
      if (where[static_cast<std::size_t>(a)] >= 0 && where[static_cast<std::size_t>(b)] >= 0)
        cov.emplace_back(where[static_cast<std::size_t>(a)], where[static_cast<std::size_t>(b)]);
    std::vector<std::string> lbl;
    if (!labels_.empty())
      for (int z : members) lbl.push_back(labels_[static_cast<std::size_t>(z)]);
    return FinitePoset(static_cast<int>(members.size()), std::move(cov), std::move(lbl));
  }

  const std::vector<int>& topo_order() const& { return topo_; }

 private:
  void check_element(int x) const {
    if (x < 0 || x >= count_) throw std::invalid_argument("poset: unknown element index");
  }

  std::vector<int> topological_order() const {
    std::vector<int> indeg(static_cast<std::size_t>(count_), 0);
    for (auto [a, b] : covers_) {
      (void)a;
      ++indeg[static_cast<std::size_t>(b)];
    }
    std::vector<int> queue;
    for (int i = 0; i < count_; ++i)
      if (indeg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(count_));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      order.push_back(v);
      for (int w : up_covers_[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
    if (static_cast<int>(order.size()) != count_)
      throw std::invalid_argument("poset: cover digraph has a cycle");
    return order;
  }

  void build_closure() {
    up_.assign(static_cast<std::size_t>(count_), BitRow(count_));
    down_.assign(static_cast<std::size_t>(count_), BitRow(count_));
    height_.assign(static_cast<std::size_t>(count_), 0);
    depth_.assign(static_cast<std::size_t>(count_), 0);
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
      const int v = *it;
      up_[static_cast<std::size_t>(v)].set(v);
      for (int w : up_covers_[static_cast<std::size_t>(v)]) {
        up_[static_cast<std::size_t>(v)] |= up_[static_cast<std::size_t>(w)];
        depth_[static_cast<std::size_t>(v)] =
            std::max(depth_[static_cast<std::size_t>(v)], depth_[static_cast<std::size_t>(w)] + 1);
      }
    }
    for (int v : topo_) {
      down_[static_cast<std::size_t>(v)].set(v);
      for (int w : down_covers_[static_cast<std::size_t>(v)]) {
        down_[static_cast<std::size_t>(v)] |= down_[static_cast<std::size_t>(w)];
        height_[static_cast<std::size_t>(v)] = std::max(
            height_[static_cast<std::size_t>(v)], height_[static_cast<std::size_t>(w)] + 1);
      }
    }
  }

  void check_reduced() const {
    for (auto [a, b] : covers_) {
      for (int z : up_covers_[static_cast<std::size_t>(a)]) {
        if (z != b && up_[static_cast<std::size_t>(z)].test(b))
          throw std::invalid_argument("poset: cover list is not transitively reduced");
      }
    }
  }

  int count_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> up_covers_, down_covers_;
  std::vector<BitRow> up_, down_;
  std::vector<int> topo_;
  std::vector<int> height_, depth_;
};

struct MeetJoinTables {
  int n = 0;
  std::vector<int> meet;  // n*n, -1 never occurs once built
  std::vector<int> join;
  int meet_of(int x, int y) const { return meet[static_cast<std::size_t>(x) * n + y]; }
  int join_of(int x, int y) const { return join[static_cast<std::size_t>(x) * n + y]; }
};

struct MeetJoinResult {
  std::optional<MeetJoinTables> tables;
  std::optional<std::pair<int, int>> missing_meet;
  std::optional<std::pair<int, int>> missing_join;
  bool ok() const { return tables.has_value(); }
};

/// Full n x n meet/join tables, or the first witnessing pair without a
/// greatest lower bound / least upper bound.
inline MeetJoinResult meet_join_tables(const FinitePoset& p) {
  MeetJoinResult r;
  const int n = p.size();
  MeetJoinTables t;
  t.n = n;
  t.meet.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  t.join.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      auto m = p.unique_maximal_in(p.down_set(x).intersect(p.down_set(y)));
      if (!m) {
        r.missing_meet = {x, y};
        return r;
      }
      auto j = p.unique_minimal_in(p.up_set(x).intersect(p.up_set(y)));
      if (!j) {
        r.missing_join = {x, y};
        return r;
      }
      t.meet[static_cast<std::size_t>(x) * n + y] = t.meet[static_cast<std::size_t>(y) * n + x] = *m;
      t.join[static_cast<std::size_t>(x) * n + y] = t.join[static_cast<std::size_t>(y) * n + x] = *j;
    }
  }
  r.tables = std::move(t);
  return r;
}

/// Bjorner-Edelman-Ziegler test: unique minimum, unique maximum, and every
/// pair of covers of a common element has a least upper bound. Cross-checked
/// against full table construction.
inline bool is_lattice_bez(const FinitePoset& p) {
  bool bez = p.size() > 0 && p.bottom().has_value() && p.top().has_value();
  if (bez) {
    for (int x = 0; x < p.size() && bez; ++x) {
      const auto& ups = p.up_covers(x);
      for (std::size_t i = 0; i < ups.size() && bez; ++i)
        for (std::size_t j = i + 1; j < ups.size() && bez; ++j) {
          auto lub = p.unique_minimal_in(p.up_set(ups[i]).intersect(p.up_set(ups[j])));
          if (!lub) bez = false;
        }
    }
  }
  const bool tables = p.size() > 0 && meet_join_tables(p).ok();
  require(bez == tables, "BEZ criterion disagrees with meet/join table existence");
  return bez;
}

/// Lattice analytics bundle; construction fails on non-lattices.
class LatticeAnalysis {
 public:
  explicit LatticeAnalysis(const FinitePoset& p) : p_(p) {
    auto r = meet_join_tables(p);
    if (!r.ok()) throw NotLatticeError("poset is not a lattice");
    t_ = std::move(*r.tables);
  }

  const FinitePoset& poset() const { return p_; }
  int meet(int x, int y) const { return t_.meet_of(x, y); }
  int join(int x, int y) const { return t_.join_of(x, y); }
  const MeetJoinTables& tables() const { return t_; }

  std::vector<int> join_irreducibles() const {
    std::vector<int> out;
    for (int x = 0; x < p_.size(); ++x)
      if (p_.down_covers(x).size() == 1) out.push_back(x);
    return out;
  }
  std::vector<int> meet_irreducibles() const {
    std::vector<int> out;
    for (int x = 0; x < p_.size(); ++x)
      if (p_.up_covers(x).size() == 1) out.push_back(x);
    return out;
  }

  bool is_extremal() const {
    const int h = p_.height();
    return h == static_cast<int>(join_irreducibles().size()) &&
           h == static_cast<int>(meet_irreducibles().size());
  }

  std::vector<int> left_modular_elements() const {
    std::vector<int> out;
    for (int u = 0; u < p_.size(); ++u) {
      bool lm = true;
      for (int v = 0; v < p_.size() && lm; ++v)
        for (int w = 0; w < p_.size(); ++w) {
          if (v == w || !p_.leq(v, w)) continue;
          if (meet(join(v, u), w) != join(v, meet(u, w))) {
            lm = false;
            break;
          }
        }
      if (lm) out.push_back(u);
    }
    return out;
  }

  /// Trim = extremal plus some maximal chain of left-modular elements
  /// (searched by DFS over covers restricted to left-modular elements).
  bool is_trim() const {
    if (!is_extremal()) return false;
    auto lm = left_modular_elements();
    std::vector<char> is_lm(static_cast<std::size_t>(p_.size()), 0);
    for (int u : lm) is_lm[static_cast<std::size_t>(u)] = 1;
    const int bot = *p_.bottom();
    const int top = *p_.top();
    if (!is_lm[static_cast<std::size_t>(bot)]) return false;
    std::vector<char> seen(static_cast<std::size_t>(p_.size()), 0);
    std::vector<int> stack{bot};
    seen[static_cast<std::size_t>(bot)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (v == top) return true;
      for (int w : p_.up_covers(v))
        if (is_lm[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }
    return false;
  }

  bool is_meet_semidistributive() const {
    const int n = p_.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (meet(x, y) != meet(x, z)) continue;
          if (meet(x, y) != meet(x, join(y, z))) return false;
        }
    return true;
  }

  bool is_join_semidistributive() const {
    const int n = p_.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (join(x, y) != join(x, z)) continue;
          if (join(x, y) != join(x, meet(y, z))) return false;
        }
    return true;
  }

  /// Barnard's cover criterion: meet-semidistributive iff for every cover
  /// x <. y the set up(x) \ up(y) has a unique maximal element.
  bool barnard_meet_semidistributive() const {
    for (auto [x, y] : p_.covers())
      if (!p_.unique_maximal_in(p_.up_set(x).minus(p_.up_set(y)))) return false;
    return true;
  }

  bool barnard_join_semidistributive() const {
    for (auto [x, y] : p_.covers())
      if (!p_.unique_minimal_in(p_.down_set(y).minus(p_.down_set(x)))) return false;
    return true;
  }

  bool is_distributive() const {
    const int n = p_.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
    return true;
  }

 private:
  const FinitePoset& p_;
  MeetJoinTables t_;
};

inline std::vector<int> join_irreducibles(const FinitePoset& p) {
  return LatticeAnalysis(p).join_irreducibles();
}
inline std::vector<int> meet_irreducibles(const FinitePoset& p) {
  return LatticeAnalysis(p).meet_irreducibles();
}
inline bool is_extremal(const FinitePoset& p) { return LatticeAnalysis(p).is_extremal(); }
inline bool is_trim(const FinitePoset& p) { return LatticeAnalysis(p).is_trim(); }
inline bool is_meet_semidistributive(const FinitePoset& p) {
  LatticeAnalysis a(p);
  const bool def = a.is_meet_semidistributive();
  require(def == a.barnard_meet_semidistributive(),
          "definitional meet-semidistributivity disagrees with the cover criterion");
  return def;
}
inline bool is_join_semidistributive(const FinitePoset& p) {
  LatticeAnalysis a(p);
  const bool def = a.is_join_semidistributive();
  require(def == a.barnard_join_semidistributive(),
          "definitional join-semidistributivity disagrees with the cover criterion");
  return def;
}
inline bool is_distributive(const FinitePoset& p) { return LatticeAnalysis(p).is_distributive(); }

namespace detail {

// Synchronized color refinement; returns per-element colors or nullopt when
// the color histograms split differently.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> refine_colors(
    const FinitePoset& a, const FinitePoset& b) {
  const int n = a.size();
  auto initial = [](const FinitePoset& p, int v) {
    return std::tuple<int, int, int, int>(p.element_height(v), p.element_depth(v),
                                          static_cast<int>(p.up_covers(v).size()),
                                          static_cast<int>(p.down_covers(v).size()));
  };
  std::map<std::tuple<int, int, int, int>, int> palette0;
  std::vector<int> ca(static_cast<std::size_t>(n)), cb(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) palette0.emplace(initial(a, v), 0);
  for (int v = 0; v < n; ++v) {
    auto it = palette0.find(initial(b, v));
    if (it == palette0.end()) return std::nullopt;
  }
  int next = 0;
  for (auto& kv : palette0) kv.second = next++;
  for (int v = 0; v < n; ++v) ca[static_cast<std::size_t>(v)] = palette0.at(initial(a, v));
  for (int v = 0; v < n; ++v) cb[static_cast<std::size_t>(v)] = palette0.at(initial(b, v));

  for (int round = 0; round < n; ++round) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    auto signature = [](const FinitePoset& p, const std::vector<int>& col, int v) {
      std::vector<int> up, down;
      for (int w : p.up_covers(v)) up.push_back(col[static_cast<std::size_t>(w)]);
      for (int w : p.down_covers(v)) down.push_back(col[static_cast<std::size_t>(w)]);
      std::sort(up.begin(), up.end());
      std::sort(down.begin(), down.end());
      return Sig(col[static_cast<std::size_t>(v)], std::move(up), std::move(down));
    };
    std::map<Sig, int> palette;
    for (int v = 0; v < n; ++v) palette.emplace(signature(a, ca, v), 0);
    for (int v = 0; v < n; ++v)
      if (palette.find(signature(b, cb, v)) == palette.end()) return std::nullopt;
    next = 0;
    for (auto& kv : palette) kv.second = next++;
    std::vector<int> na(static_cast<std::size_t>(n)), nb(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) na[static_cast<std::size_t>(v)] = palette.at(signature(a, ca, v));
    for (int v = 0; v < n; ++v) nb[static_cast<std::size_t>(v)] = palette.at(signature(b, cb, v));
    std::vector<int> ha = na, hb = nb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
    const bool stable = (na == ca);
    ca = std::move(na);
    cb = std::move(nb);
    if (stable) break;
  }
  return std::make_pair(ca, cb);
}

}  // namespace detail

/// Poset isomorphism by color refinement followed by backtracking on the
/// cover digraph.
inline bool are_isomorphic(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size() || a.covers().size() != b.covers().size()) return false;
  if (a.size() == 0) return true;
  auto colors = detail::refine_colors(a, b);
  if (!colors) return false;
  const auto& [ca, cb] = *colors;
  const int n = a.size();

  // Candidate images grouped by color.
  std::map<int, std::vector<int>> by_color_b;
  for (int v = 0; v < n; ++v) by_color_b[cb[static_cast<std::size_t>(v)]].push_back(v);

  // Order the source elements so small color classes are matched first.
  std::map<int, int> class_size;
  for (int v = 0; v < n; ++v) ++class_size[ca[static_cast<std::size_t>(v)]];
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const int sx = class_size.at(ca[static_cast<std::size_t>(x)]);
    const int sy = class_size.at(ca[static_cast<std::size_t>(y)]);
    if (sx != sy) return sx < sy;
    return x < y;
  });

  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  auto consistent = [&](int v, int w) {
    for (int u : a.up_covers(v)) {
      const int m = image[static_cast<std::size_t>(u)];
      if (m >= 0) {
        const auto& ups = b.up_covers(w);
        if (std::find(ups.begin(), ups.end(), m) == ups.end()) return false;
      }
    }
    for (int u : a.down_covers(v)) {
      const int m = image[static_cast<std::size_t>(u)];
      if (m >= 0) {
        const auto& downs = b.down_covers(w);
        if (std::find(downs.begin(), downs.end(), m) == downs.end()) return false;
      }
    }
    return true;
  };

  auto backtrack = [&](auto&& self, std::size_t idx) -> bool {
    if (idx == order.size()) return true;
    const int v = order[idx];
    for (int w : by_color_b.at(ca[static_cast<std::size_t>(v)])) {
      if (used[static_cast<std::size_t>(w)] || !consistent(v, w)) continue;
      image[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = 1;
      if (self(self, idx + 1)) return true;
      image[static_cast<std::size_t>(v)] = -1;
      used[static_cast<std::size_t>(w)] = 0;
    }
    return false;
  };
  return backtrack(backtrack, 0);
}

}  // namespace operahedra
