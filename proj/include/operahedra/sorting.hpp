#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "operahedra/theta.hpp"
#include "operahedra/weak_words.hpp"

namespace operahedra {

struct Permutation {
  std::vector<int> word;  // one-line notation over 1..n
  int n() const { return static_cast<int>(word.size()); }
  bool operator==(const Permutation& o) const { return word == o.word; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return word < o.word; }
};

/// Comma-free digit strings up to n = 9, comma-separated beyond.
inline Permutation parse_permutation(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("permutation: empty text");
  std::vector<int> word;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      const std::string piece(text.substr(start, end - start));
      if (piece.empty()) throw std::invalid_argument("permutation: empty entry");
      word.push_back(std::stoi(piece));
      start = end + 1;
      if (end == text.size()) break;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw std::invalid_argument("permutation: expected digits 1-9 or a comma-separated list");
      word.push_back(c - '0');
    }
  }
  if (!is_permutation_word(word))
    throw std::invalid_argument("permutation: letters must be 1..n, each exactly once");
  return {std::move(word)};
}

inline std::string format_permutation(const Permutation& p) {
  std::string s;
  const bool compact = p.n() <= 9;
  for (int i = 0; i < p.n(); ++i) {
    if (!compact && i) s += ',';
    s += std::to_string(p.word[static_cast<std::size_t>(i)]);
  }
  return s;
}

inline Permutation identity_permutation(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return {std::move(w)};
}

inline std::vector<std::pair<int, int>> inversions(const Permutation& p) {
  return inversion_pairs(p.word);
}

inline bool weak_leq(const Permutation& a, const Permutation& b) {
  require(a.n() == b.n(), "weak order: sizes differ");
  return inversions_subset(a.word, b.word);
}

inline Permutation weak_join(const Permutation& a, const Permutation& b) {
  return {weak_join_words(a.word, b.word)};
}

inline Permutation weak_meet(const Permutation& a, const Permutation& b) {
  return {weak_meet_words(a.word, b.word)};
}

/// West's stack-sorting map: s(L n R) = s(L) s(R) n.
inline std::vector<int> stack_sort_word(const std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (lo >= hi) return;
    std::size_t top = lo;
    for (std::size_t i = lo + 1; i < hi; ++i)
      if (word[i] > word[top]) top = i;
    self(self, lo, top);
    self(self, top + 1, hi);
    out.push_back(word[top]);
  };
  rec(rec, 0, word.size());
  return out;
}

inline Permutation stack_sort(const Permutation& p) { return {stack_sort_word(p.word)}; }

/// (a, b) with a < b becomes an inversion of s(sigma) iff some c > b sits
/// between b and a in sigma.
inline bool stack_inversion_criterion(const Permutation& sigma, int a, int b) {
  if (!(1 <= a && a < b && b <= sigma.n()))
    throw std::invalid_argument("criterion: need 1 <= a < b <= n");
  const auto pos = word_positions(sigma.word);
  for (int c = b + 1; c <= sigma.n(); ++c)
    if (pos[static_cast<std::size_t>(b)] < pos[static_cast<std::size_t>(c)] &&
        pos[static_cast<std::size_t>(c)] < pos[static_cast<std::size_t>(a)])
      return true;
  return false;
}

/// k (k-1) ... 1 (k+1) (k+2) ... n
inline Permutation w_circ(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("w_circ: need 1 <= k <= n");
  std::vector<int> w;
  for (int v = k; v >= 1; --v) w.push_back(v);
  for (int v = k + 1; v <= n; ++v) w.push_back(v);
  return {std::move(w)};
}

/// Principal weak-order ideal of w_circ(k, n): permutations fixing k+1..n.
/// Both characterizations (fixed tail, inversions bounded by k) are computed
/// and must agree.
inline std::vector<Permutation> delta_ideal(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("delta_ideal: need 1 <= k <= n");
  std::vector<Permutation> out;
  std::vector<int> head(static_cast<std::size_t>(k));
  std::iota(head.begin(), head.end(), 1);
  do {
    std::vector<int> w = head;
    for (int v = k + 1; v <= n; ++v) w.push_back(v);
    out.push_back({std::move(w)});
  } while (std::next_permutation(head.begin(), head.end()));
  std::sort(out.begin(), out.end());
  for (const Permutation& p : out)
    for (auto [i, j] : inversions(p))
      require(j <= k, "delta ideal: inversion characterization failed");
  const Permutation top = w_circ(k, n);
  for (const Permutation& p : out)
    require(weak_leq(p, top), "delta ideal: member above the generator");
  return out;
}

/// {sigma : s(sigma) in targets}, by full enumeration of the symmetric group.
inline std::vector<Permutation> stack_preimages(const std::vector<Permutation>& targets, int n,
                                                int cap = 9) {
  if (n > cap)
    throw SizeCapError("stack_preimages: n = " + std::to_string(n) + " exceeds the cap " +
                       std::to_string(cap));
  std::unordered_set<std::string> keys;
  for (const Permutation& p : targets) keys.insert(format_permutation(p));
  std::vector<Permutation> out;
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  do {
    if (keys.count(format_permutation({stack_sort_word(w)}))) out.push_back({w});
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

struct BroomShape {
  int k = 0, n = 0;
};

/// Recognize the chain-with-claw-top shape; chains read as k = 1 brooms.
inline std::optional<BroomShape> broom_shape(const PlaneTree& t) {
  const int n = t.n();
  if (n < 1) return std::nullopt;
  int v = 0;
  while (t.children(v).size() == 1) v = t.children(v)[0];
  if (t.children(v).empty()) {
    // Walked to the single leaf: the tree is a chain.
    return v == n ? std::optional<BroomShape>(BroomShape{1, n}) : std::nullopt;
  }
  for (int c : t.children(v))
    if (!t.children(c).empty()) return std::nullopt;
  return BroomShape{n - v, n};
}

namespace detail {

inline BroomShape require_broom(const PlaneTree& t) {
  auto bs = broom_shape(t);
  if (!bs) throw std::invalid_argument("tree is not a broom");
  return *bs;
}

}  // namespace detail

/// The stack-sorting side of the broom correspondence: reading ornament
/// membership sets of mirrored labels in reverse extension order.
inline Permutation omega(const PlaneTree& t, const ThetaPair& p) {
  const BroomShape bs = detail::require_broom(t);
  const int n = bs.n;
  require(is_theta_pair(t, p), "omega: invalid pair");
  const auto& word = p.lambda.word;
  // membership[u] = { j : u lies in the ornament at n+1-j }, as a bitmask.
  std::vector<VertexSet> membership(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) {
    const VertexSet orn = p.rho.at[static_cast<std::size_t>(n + 1 - j)];
    for (int u : set_vertices(orn)) membership[static_cast<std::size_t>(u)] |= single_vertex(j);
  }
  std::vector<int> out;
  VertexSet later = 0;
  for (int ell = n; ell >= 1; --ell) {
    const int w = word[static_cast<std::size_t>(ell - 1)];
    VertexSet fresh = membership[static_cast<std::size_t>(w)] & ~later;
    later |= membership[static_cast<std::size_t>(w)];
    std::vector<int> vals = set_vertices(fresh);
    for (auto it = vals.rbegin(); it != vals.rend(); ++it) out.push_back(*it);
  }
  Permutation result{std::move(out)};
  require(is_permutation_word(result.word), "omega: output is not a permutation");
  return result;
}

/// Lemma-style inversion characterization used to pin omega's output.
inline bool omega_inversion_expected(const PlaneTree& t, const ThetaPair& p, int k, int i, int j) {
  const auto pos = word_positions(p.lambda.word);
  (void)t;
  if (j <= k) return pair_inverted(pos, t.n() + 1 - j, t.n() + 1 - i);
  return set_contains(p.rho.at[static_cast<std::size_t>(t.n() + 1 - j)], t.n() + 1 - i);
}

/// Inverse of omega; the construction is validated against the pair
/// invariants and the inversion characterization rather than trusted.
inline ThetaPair omega_inverse(const Permutation& sigma, int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("omega_inverse: need 1 <= k <= n");
  if (sigma.n() != n) throw std::invalid_argument("omega_inverse: size mismatch");
  const PlaneTree t = broom(k, n);
  const auto pos = word_positions(sigma.word);

  std::vector<int> tail;
  for (int v = n - k + 1; v <= n; ++v) tail.push_back(v);
  std::sort(tail.begin(), tail.end(), [&](int a, int b) {
    return pos[static_cast<std::size_t>(n + 1 - a)] > pos[static_cast<std::size_t>(n + 1 - b)];
  });

  ThetaPair p;
  for (int v = 1; v <= n - k; ++v) p.lambda.word.push_back(v);
  p.lambda.word.insert(p.lambda.word.end(), tail.begin(), tail.end());

  p.rho.at.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) {
    VertexSet orn = single_vertex(n + 1 - j);
    if (j >= k + 1)
      for (int i = 1; i < j; ++i)
        if (pair_inverted(pos, i, j)) orn |= single_vertex(n + 1 - i);
    p.rho.at[static_cast<std::size_t>(n + 1 - j)] = orn;
  }

  const std::string bad = theta_violation(t, p);
  if (!bad.empty())
    throw ConstructionError("omega_inverse: " + format_permutation(sigma) +
                            " is not a stack-sorting preimage of the ideal (" + bad + ")");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pair_inverted(pos, i, j) != omega_inversion_expected(t, p, k, i, j))
        throw ConstructionError("omega_inverse: inversion characterization failed");
  require(omega(t, p) == sigma, "omega_inverse: round trip failed");
  return p;
}

struct BroomIsoReport {
  int k = 0, n = 0;
  std::size_t theta_count = 0;
  std::size_t preimage_count = 0;
  bool bijective = false;
  bool order_iso = false;
  std::string first_violation;
  bool ok() const { return bijective && order_iso && first_violation.empty(); }
};

/// Checks that omega is a bijection onto the stack-sorting preimage set and
/// an order isomorphism against the weak order, with inverse round trips.
inline BroomIsoReport verify_broom_iso(int k, int n, int cap = 9) {
  BroomIsoReport r;
  r.k = k;
  r.n = n;
  if (n > cap)
    throw SizeCapError("verify_broom_iso: n = " + std::to_string(n) + " exceeds the cap " +
                       std::to_string(cap));
  const PlaneTree t = broom(k, n);
  const std::vector<ThetaPair> theta = enumerate_theta(t);
  r.theta_count = theta.size();

  std::vector<Permutation> images;
  images.reserve(theta.size());
  for (const ThetaPair& p : theta) {
    images.push_back(omega(t, p));
    ThetaPair back = omega_inverse(images.back(), k, n);
    if (back != p) {
      r.first_violation = "omega_inverse(omega(p)) != p at " + theta_pair_to_string(p);
      return r;
    }
  }

  std::vector<Permutation> sorted_images = images;
  std::sort(sorted_images.begin(), sorted_images.end());
  std::vector<Permutation> target = stack_preimages(delta_ideal(k, n), n, cap);
  std::sort(target.begin(), target.end());
  r.preimage_count = target.size();
  r.bijective = sorted_images == target &&
                std::adjacent_find(sorted_images.begin(), sorted_images.end()) ==
                    sorted_images.end();
  if (!r.bijective) {
    r.first_violation = "omega image differs from the stack-sorting preimage set";
    return r;
  }

  // Order isomorphism, both directions at once. Inversion sets fit in one
  // word for the sizes the cap admits.
  const int pair_count = n * (n - 1) / 2;
  require(pair_count <= 63, "verify_broom_iso: inversion mask overflow");
  auto pair_mask = [&](const std::vector<int>& word) {
    const auto pos = word_positions(word);
    std::uint64_t m = 0;
    int bit = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j, ++bit)
        if (pair_inverted(pos, i, j)) m |= std::uint64_t{1} << bit;
    return m;
  };
  std::vector<std::uint64_t> theta_inv(theta.size()), image_inv(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta_inv[i] = pair_mask(theta[i].lambda.word);
    image_inv[i] = pair_mask(images[i].word);
  }
  r.order_iso = true;
  for (std::size_t i = 0; i < theta.size() && r.order_iso; ++i)
    for (std::size_t j = 0; j < theta.size(); ++j) {
      if (i == j) continue;
      const bool lhs = (theta_inv[i] & ~theta_inv[j]) == 0 &&
                       ornamentation_leq(theta[i].rho, theta[j].rho);
      const bool rhs = (image_inv[i] & ~image_inv[j]) == 0;
      if (lhs != rhs) {
        r.order_iso = false;
        r.first_violation = "order not preserved between " + theta_pair_to_string(theta[i]) +
                            " and " + theta_pair_to_string(theta[j]);
        break;
      }
    }
  return r;
}

}  // namespace operahedra
