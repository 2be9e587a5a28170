#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "operahedra/util.hpp"

namespace operahedra {

// One-line words over 1..n. Values are 1-based; positions are 0-based.

inline std::string word_to_string(const std::vector<int>& word) {
  std::string s;
  const bool compact = word.size() <= 9;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i) s += ',';
    s += std::to_string(word[i]);
  }
  return s;
}

inline bool is_permutation_word(const std::vector<int>& word) {
  const int n = static_cast<int>(word.size());
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : word) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline std::vector<int> word_positions(const std::vector<int>& word) {
  std::vector<int> pos(word.size() + 1, -1);
  for (std::size_t i = 0; i < word.size(); ++i) pos[static_cast<std::size_t>(word[i])] = static_cast<int>(i);
  return pos;
}

/// (i, j) with i < j is an inversion when j precedes i.
inline bool pair_inverted(const std::vector<int>& pos, int x, int y) {
  const int lo = std::min(x, y), hi = std::max(x, y);
  return pos[static_cast<std::size_t>(hi)] < pos[static_cast<std::size_t>(lo)];
}

inline std::vector<std::pair<int, int>> inversion_pairs(const std::vector<int>& word) {
  const auto pos = word_positions(word);
  const int n = static_cast<int>(word.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pair_inverted(pos, i, j)) out.emplace_back(i, j);
  return out;
}

inline int inversion_count(const std::vector<int>& word) {
  return static_cast<int>(inversion_pairs(word).size());
}

/// Inv(a) subset of Inv(b).
inline bool inversions_subset(const std::vector<int>& a, const std::vector<int>& b) {
  const auto pa = word_positions(a);
  const auto pb = word_positions(b);
  const int n = static_cast<int>(a.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pair_inverted(pa, i, j) && !pair_inverted(pb, i, j)) return false;
  return true;
}

namespace detail {

// inv is an upper-triangular membership table: inv[(i-1)*n + (j-1)] for i<j.
inline void close_inversions(int n, std::vector<char>& inv) {
  bool changed = true;
  auto at = [&](int i, int j) -> char& {
    return inv[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + (j - 1)];
  };
  while (changed) {
    changed = false;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (!at(i, j)) continue;
        for (int k = j + 1; k <= n; ++k)
          if (at(j, k) && !at(i, k)) {
            at(i, k) = 1;
            changed = true;
          }
      }
  }
}

}  // namespace detail

/// The word whose inversion set equals the given membership table, if the
/// table is a valid inversion set. Built by repeated leftmost-letter
/// selection, then verified exactly.
inline std::optional<std::vector<int>> word_from_inversions(int n, const std::vector<char>& inv) {
  auto at = [&](int i, int j) {
    return inv[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + (j - 1)] != 0;
  };
  std::vector<int> remaining(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> word;
  while (!remaining.empty()) {
    int chosen = -1;
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      const int v = remaining[c];
      bool first = true;
      for (int w : remaining) {
        if (w == v) continue;
        // v must precede w: not inverted if v < w, inverted if v > w.
        const bool inverted = v < w ? at(v, w) : at(w, v);
        if (inverted != (v > w)) {
          first = false;
          break;
        }
      }
      if (first) {
        chosen = static_cast<int>(c);
        break;
      }
    }
    if (chosen < 0) return std::nullopt;
    word.push_back(remaining[static_cast<std::size_t>(chosen)]);
    remaining.erase(remaining.begin() + chosen);
  }
  const auto pos = word_positions(word);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pair_inverted(pos, i, j) != at(i, j)) return std::nullopt;
  return word;
}

/// Join in the weak order: transitive closure of the union of the two
/// inversion sets, realized back as a word.
inline std::vector<int> weak_join_words(const std::vector<int>& a, const std::vector<int>& b) {
  require(a.size() == b.size(), "weak join: words must have equal length");
  const int n = static_cast<int>(a.size());
  const auto pa = word_positions(a);
  const auto pb = word_positions(b);
  std::vector<char> inv(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pair_inverted(pa, i, j) || pair_inverted(pb, i, j))
        inv[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + (j - 1)] = 1;
  detail::close_inversions(n, inv);
  auto word = word_from_inversions(n, inv);
  require(word.has_value(), "weak join: closed inversion union is not realizable");
  return *word;
}

/// Meet via the reversal anti-automorphism (reversing the one-line word
/// complements the inversion set).
inline std::vector<int> weak_meet_words(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> ra(a.rbegin(), a.rend());
  std::vector<int> rb(b.rbegin(), b.rend());
  std::vector<int> j = weak_join_words(ra, rb);
  return std::vector<int>(j.rbegin(), j.rend());
}

}  // namespace operahedra
