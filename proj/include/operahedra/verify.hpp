#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "operahedra/io.hpp"
#include "operahedra/mn_lattice.hpp"
#include "operahedra/poset.hpp"
#include "operahedra/sorting.hpp"

namespace operahedra {

struct VerificationFailure {
  std::string instance;  // replayable serialized counterexample
  std::string detail;
};

struct VerificationReport {
  std::string theorem;
  std::string parameter_range;
  long long instances_checked = 0;
  std::vector<std::pair<int, long long>> per_n;
  std::vector<VerificationFailure> failures;
  double wall_seconds = 0.0;
  bool verified() const { return failures.empty(); }
};

inline Json report_to_json(const VerificationReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"instance", f.instance}, {"detail", f.detail}});
  Json per_n = Json::array();
  for (auto [n, c] : r.per_n) per_n.push_back(Json{{"n", n}, {"trees", c}});
  return Json{{"theorem", r.theorem},
              {"range", r.parameter_range},
              {"instances_checked", r.instances_checked},
              {"per_n", per_n},
              {"status", r.verified() ? "verified" : "violated"},
              {"failures", failures},
              {"wall_seconds", r.wall_seconds}};
}

namespace detail {

template <typename F>
void parallel_for(std::size_t count, int jobs, F&& f) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
  };
  std::vector<std::thread> pool;
  const int threads = std::min<int>(jobs, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Per-tree check returning an empty string on success. Results are merged in
// tree order, so reports are deterministic regardless of the job count.
inline VerificationReport run_over_trees(
    const std::string& theorem, int max_n, int jobs,
    const std::function<std::string(const PlaneTree&)>& check) {
  VerificationReport r;
  r.theorem = theorem;
  r.parameter_range = "1 <= n <= " + std::to_string(max_n);
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 1; n <= max_n; ++n) {
    const std::vector<PlaneTree> trees = enumerate_trees(n);
    std::vector<std::string> results(trees.size());
    parallel_for(trees.size(), jobs, [&](std::size_t i) {
      try {
        results[i] = check(trees[i]);
      } catch (const std::exception& e) {
        results[i] = std::string("exception: ") + e.what();
      }
    });
    for (std::size_t i = 0; i < trees.size(); ++i) {
      ++r.instances_checked;
      if (!results[i].empty()) r.failures.push_back({trees[i].render(), results[i]});
    }
    r.per_n.emplace_back(n, static_cast<long long>(trees.size()));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// The non-semidistributive witness tree: root with a two-leaf middle child
/// and one extra leaf.
inline const PlaneTree& branching_witness_tree() {
  static const PlaneTree t = PlaneTree::parse("((()())())");
  return t;
}

/// MN(T) is a lattice (BEZ plus full tables) and Psi matches the two Hasse
/// diagrams edge for edge with equal move types.
inline VerificationReport verify_lattice(int max_n, int jobs = 1) {
  return detail::run_over_trees("lattice", max_n, jobs, [](const PlaneTree& t) -> std::string {
    MnLattice mn = mn_lattice(t);
    ThetaLattice th = theta_lattice(t);
    if (!is_lattice_bez(mn.poset)) return "cover-join lattice test failed";
    if (!meet_join_tables(mn.poset).ok()) return "meet/join tables do not exist";
    if (mn.elements.size() != th.elements.size()) return "representation sizes differ";

    std::vector<int> image(th.elements.size());
    std::vector<char> hit(mn.elements.size(), 0);
    for (std::size_t i = 0; i < th.elements.size(); ++i) {
      const Nesting nest = psi_inverse(t, th.elements[i]);
      if (psi(t, nest) != th.elements[i]) return "psi round trip failed";
      const auto it = std::lower_bound(mn.elements.begin(), mn.elements.end(), nest);
      if (it == mn.elements.end() || *it != nest) return "psi image missing from MN";
      image[i] = static_cast<int>(it - mn.elements.begin());
      if (hit[static_cast<std::size_t>(image[i])]) return "psi image repeated";
      hit[static_cast<std::size_t>(image[i])] = 1;
    }
    if (mn.poset.covers().size() != th.poset.covers().size()) return "cover counts differ";
    std::map<std::pair<int, int>, MoveKind> mn_kind;
    for (std::size_t e = 0; e < mn.poset.covers().size(); ++e)
      mn_kind.emplace(mn.poset.covers()[e], mn.cover_kinds[e]);
    for (std::size_t e = 0; e < th.poset.covers().size(); ++e) {
      const auto [a, b] = th.poset.covers()[e];
      const auto it = mn_kind.find({image[static_cast<std::size_t>(a)],
                                    image[static_cast<std::size_t>(b)]});
      if (it == mn_kind.end()) return "theta cover missing in MN under psi";
      if (it->second != th.cover_kinds[e]) return "move type differs under psi";
    }
    return {};
  });
}

/// Both semidistributivity definitions, both Barnard criteria, the
/// rightmost-branch degree condition, and the forbidden-minor condition all
/// agree.
inline VerificationReport verify_semidistributive(int max_n, int jobs = 1) {
  return detail::run_over_trees(
      "semidistributive", max_n, jobs, [](const PlaneTree& t) -> std::string {
        MnLattice mn = mn_lattice(t);
        LatticeAnalysis an(mn.poset);
        const bool def_meet = an.is_meet_semidistributive();
        const bool def_join = an.is_join_semidistributive();
        const bool barn_meet = an.barnard_meet_semidistributive();
        const bool barn_join = an.barnard_join_semidistributive();
        const bool degree = unary_off_rightmost_branch(t);
        const bool minor_free = !contains(t, branching_witness_tree());
        if (def_meet != degree || def_join != degree || barn_meet != degree ||
            barn_join != degree || minor_free != degree) {
          std::string s = "conditions disagree:";
          s += " def_meet=" + std::to_string(def_meet);
          s += " def_join=" + std::to_string(def_join);
          s += " barnard_meet=" + std::to_string(barn_meet);
          s += " barnard_join=" + std::to_string(barn_join);
          s += " degree=" + std::to_string(degree);
          s += " minor_free=" + std::to_string(minor_free);
          return s;
        }
        return {};
      });
}

/// Trimness matches the degree condition; trim instances have
/// height = |J| = |M| = n(n-1)/2.
inline VerificationReport verify_trim(int max_n, int jobs = 1) {
  return detail::run_over_trees("trim", max_n, jobs, [](const PlaneTree& t) -> std::string {
    MnLattice mn = mn_lattice(t);
    LatticeAnalysis an(mn.poset);
    const bool trim = an.is_trim();
    const bool degree = root_branching_only(t, 2);
    if (trim != degree)
      return "trim=" + std::to_string(trim) + " degree_condition=" + std::to_string(degree);
    if (trim) {
      const int expect = t.n() * (t.n() - 1) / 2;
      const int h = mn.poset.height();
      const int ji = static_cast<int>(an.join_irreducibles().size());
      const int mi = static_cast<int>(an.meet_irreducibles().size());
      if (h != expect || ji != expect || mi != expect)
        return "height=" + std::to_string(h) + " |J|=" + std::to_string(ji) +
               " |M|=" + std::to_string(mi) + " expected=" + std::to_string(expect);
    }
    return {};
  });
}

/// MN(T) is distributive exactly when n <= 2.
inline VerificationReport verify_distributive(int max_n, int jobs = 1) {
  return detail::run_over_trees("distributive", max_n, jobs,
                                [](const PlaneTree& t) -> std::string {
                                  MnLattice mn = mn_lattice(t);
                                  const bool dist = LatticeAnalysis(mn.poset).is_distributive();
                                  if (dist != (t.n() <= 2))
                                    return "distributive=" + std::to_string(dist) +
                                           " for n=" + std::to_string(t.n());
                                  return {};
                                });
}

/// For every single edge contraction, the nestings containing the contracted
/// tube form an interval isomorphic to the contracted tree's lattice.
inline VerificationReport verify_intervals(int max_n, int jobs = 1) {
  return detail::run_over_trees("intervals", max_n, jobs, [](const PlaneTree& t) -> std::string {
    MnLattice mn = mn_lattice(t);
    for (int v = 1; v <= t.n(); ++v) {
      const PlaneTree contracted = t.contract_edge(v);
      if (contracted.n() < 1) continue;
      const VertexSet star = single_vertex(t.parent(v)) | single_vertex(v);
      std::vector<int> q;
      for (std::size_t i = 0; i < mn.elements.size(); ++i)
        if (mn.elements[i].has_tube(star)) q.push_back(static_cast<int>(i));
      if (q.empty()) return "no nesting contains the contracted-edge tube";
      std::optional<int> lo, hi;
      for (int cand : q) {
        bool below_all = true, above_all = true;
        for (int other : q) {
          if (!mn.poset.leq(cand, other)) below_all = false;
          if (!mn.poset.leq(other, cand)) above_all = false;
        }
        if (below_all) lo = cand;
        if (above_all) hi = cand;
      }
      if (!lo || !hi)
        return "tube subposet has no bottom or top (contracted vertex " + std::to_string(v) + ")";
      std::size_t interval_size = 0;
      for (int z = 0; z < mn.poset.size(); ++z)
        if (mn.poset.leq(*lo, z) && mn.poset.leq(z, *hi)) {
          ++interval_size;
          if (std::find(q.begin(), q.end(), z) == q.end())
            return "interval contains a nesting without the tube (contracted vertex " +
                   std::to_string(v) + ")";
        }
      if (interval_size != q.size())
        return "tube subposet is not the full interval (contracted vertex " + std::to_string(v) +
               ")";
      const FinitePoset inner = mn.poset.interval(*lo, *hi);
      const MnLattice target = mn_lattice(contracted);
      if (!are_isomorphic(inner, target.poset))
        return "interval is not isomorphic to the contracted lattice (contracted vertex " +
               std::to_string(v) + ")";
    }
    return {};
  });
}

/// Covers of Theta against the forced-extremum constructions: associahedron
/// moves always have unique extrema matching the construction; permutohedron
/// moves match exactly on trees whose off-branch vertices are unary, and on
/// the remaining trees both kinds of non-unique extrema must occur.
inline VerificationReport verify_forced_extrema(int max_n, int jobs = 1) {
  return detail::run_over_trees(
      "forced-extrema", max_n, jobs, [](const PlaneTree& t) -> std::string {
        ThetaLattice th = theta_lattice(t);
        const bool unary = unary_off_rightmost_branch(t);
        bool perm_max_failure = false, perm_min_failure = false;
        for (std::size_t e = 0; e < th.poset.covers().size(); ++e) {
          const auto [a, b] = th.poset.covers()[e];
          CoverMove m = classify_cover(t, th.elements[static_cast<std::size_t>(a)],
                                       th.elements[static_cast<std::size_t>(b)]);
          if (m.kind != th.cover_kinds[e]) return "classified move kind disagrees";
          const auto up_diff = th.poset.up_set(a).minus(th.poset.up_set(b));
          const auto down_diff = th.poset.down_set(b).minus(th.poset.down_set(a));
          const auto brute_max = th.poset.unique_maximal_in(up_diff);
          const auto brute_min = th.poset.unique_minimal_in(down_diff);
          if (m.kind == MoveKind::associahedron || unary) {
            if (!brute_max) return "difference filter lacks a unique maximum";
            if (!brute_min) return "difference ideal lacks a unique minimum";
            if (forced_max_of_difference(t, m) !=
                th.elements[static_cast<std::size_t>(*brute_max)])
              return "forced maximum differs from the brute-force maximum";
            if (forced_min_of_difference(t, m) !=
                th.elements[static_cast<std::size_t>(*brute_min)])
              return "forced minimum differs from the brute-force minimum";
          } else {
            if (!brute_max) perm_max_failure = true;
            if (!brute_min) perm_min_failure = true;
          }
        }
        if (!unary && !(perm_max_failure && perm_min_failure))
          return "expected non-unique extrema on some permutohedron cover";
        return {};
      });
}

/// Theorem 1.5 harness wrapper producing a report.
inline VerificationReport verify_broom_report(int k, int n, int cap = 9) {
  VerificationReport r;
  r.theorem = "broom";
  r.parameter_range = "k=" + std::to_string(k) + " n=" + std::to_string(n);
  const auto t0 = std::chrono::steady_clock::now();
  BroomIsoReport b = verify_broom_iso(k, n, cap);
  r.instances_checked = static_cast<long long>(b.theta_count);
  if (!b.ok())
    r.failures.push_back({"broom(" + std::to_string(k) + "," + std::to_string(n) + ")",
                          b.first_violation.empty() ? "bijection or order check failed"
                                                    : b.first_violation});
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace operahedra
