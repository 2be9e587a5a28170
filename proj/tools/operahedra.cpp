// Command-line front end: build trees and lattices, report lattice
// properties, export Hasse diagrams, and run the verification harness.
//
// Exit codes: 0 ok/verified, 1 violation found, 2 usage/parse error,
// 3 size cap exceeded.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "operahedra/io.hpp"
#include "operahedra/mn_lattice.hpp"
#include "operahedra/sorting.hpp"
#include "operahedra/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct Options {
  int jobs = 1;
  int lattice_cap = 6;
  int perm_cap = 9;
  unsigned long long seed = 0;  // reserved; everything is deterministic
};

void check_lattice_cap(const Options& opt, int n) {
  if (n > opt.lattice_cap)
    throw operahedra::SizeCapError("n = " + std::to_string(n) +
                                   " exceeds the lattice size cap " +
                                   std::to_string(opt.lattice_cap) +
                                   " (raise it with --lattice-cap)");
}

void print_report(const operahedra::VerificationReport& r) {
  std::cout << operahedra::report_to_json(r).dump(2) << "\n";
}

int report_exit(const operahedra::VerificationReport& r) {
  print_report(r);
  return r.verified() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace operahedra;

  CLI::App app{"operahedron lattice toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--jobs", opt.jobs, "worker threads for tree-level parallelism")
      ->check(CLI::PositiveNumber);
  app.add_option("--lattice-cap", opt.lattice_cap, "largest n for full-lattice work (default 6)");
  app.add_option("--perm-cap", opt.perm_cap, "largest n for permutation utilities (default 9)");
  app.add_option("--seed", opt.seed, "reserved; all output is deterministic");

  // tree show / tree enumerate
  auto* tree_cmd = app.add_subcommand("tree", "parse, render, and enumerate plane trees");
  tree_cmd->require_subcommand(1);
  std::string tree_text;
  bool tree_json = false;
  auto* tree_show = tree_cmd->add_subcommand("show", "parse a tree and print it back");
  tree_show->add_option("tree", tree_text, "nested-parentheses tree text")->required();
  tree_show->add_flag("--json", tree_json, "print the JSON form");
  int enum_n = 0;
  auto* tree_enum = tree_cmd->add_subcommand("enumerate", "list all trees with n+1 vertices");
  tree_enum->add_option("--n", enum_n, "tree size n")->required();

  // lattice build / lattice props
  auto* lattice_cmd = app.add_subcommand("lattice", "build and analyze operahedron lattices");
  lattice_cmd->require_subcommand(1);
  std::string build_tree_text, build_repr = "nesting", build_out = "json";
  auto* lattice_build = lattice_cmd->add_subcommand("build", "export the Hasse diagram");
  lattice_build->add_option("tree", build_tree_text, "nested-parentheses tree text")->required();
  lattice_build->add_option("--repr", build_repr, "element representation")
      ->check(CLI::IsMember({"nesting", "theta"}));
  lattice_build->add_option("--out", build_out, "output format")
      ->check(CLI::IsMember({"json", "dot"}));
  std::string props_tree_text;
  auto* lattice_props = lattice_cmd->add_subcommand("props", "report lattice properties");
  lattice_props->add_option("tree", props_tree_text, "nested-parentheses tree text")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "exhaustive theorem harness");
  verify_cmd->require_subcommand(1);
  int max_n = 5;
  auto* v_lattice = verify_cmd->add_subcommand("lattice", "lattice property over all trees");
  auto* v_semi = verify_cmd->add_subcommand("semidistributive", "semidistributivity conditions");
  auto* v_trim = verify_cmd->add_subcommand("trim", "trimness condition");
  auto* v_dist = verify_cmd->add_subcommand("distributive", "distributivity boundary");
  auto* v_int = verify_cmd->add_subcommand("intervals", "contraction intervals");
  for (auto* sc : {v_lattice, v_semi, v_trim, v_dist, v_int})
    sc->add_option("--max-n", max_n, "largest tree size to check (default 5)");
  int broom_k = 1, broom_n = 1;
  auto* v_broom = verify_cmd->add_subcommand("broom", "broom/stack-sorting isomorphism");
  v_broom->add_option("--k", broom_k, "leaf count")->required();
  v_broom->add_option("--n", broom_n, "tree size")->required();

  // sort / preimages
  std::string sort_text;
  auto* sort_cmd = app.add_subcommand("sort", "apply the stack-sorting map");
  sort_cmd->add_option("perm", sort_text, "permutation in one-line notation")->required();
  int pre_k = 1, pre_n = 1;
  auto* pre_cmd = app.add_subcommand("preimages", "stack-sorting preimages of the ideal");
  pre_cmd->add_option("--k", pre_k, "ideal parameter k")->required();
  pre_cmd->add_option("--n", pre_n, "symmetric group size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (tree_show->parsed()) {
      const PlaneTree t = PlaneTree::parse(tree_text);
      if (tree_json)
        std::cout << tree_to_json(t).dump() << "\n";
      else
        std::cout << t.render() << "\n";
      return kExitOk;
    }
    if (tree_enum->parsed()) {
      for (const PlaneTree& t : enumerate_trees(enum_n)) std::cout << t.render() << "\n";
      return kExitOk;
    }
    if (lattice_build->parsed()) {
      const PlaneTree t = PlaneTree::parse(build_tree_text);
      check_lattice_cap(opt, t.n());
      if (build_repr == "nesting") {
        MnLattice l = mn_lattice(t);
        std::cout << (build_out == "dot" ? mn_lattice_to_dot(l) : poset_to_json(l.poset).dump(2) + "\n");
      } else {
        ThetaLattice l = theta_lattice(t);
        std::cout << (build_out == "dot" ? theta_lattice_to_dot(l)
                                         : poset_to_json(l.poset).dump(2) + "\n");
      }
      return kExitOk;
    }
    if (lattice_props->parsed()) {
      const PlaneTree t = PlaneTree::parse(props_tree_text);
      check_lattice_cap(opt, t.n());
      MnLattice l = mn_lattice(t);
      const bool lattice = is_lattice_bez(l.poset);
      Json out{{"tree", t.render()}, {"elements", l.poset.size()}, {"lattice", lattice}};
      if (lattice) {
        LatticeAnalysis an(l.poset);
        out["distributive"] = an.is_distributive();
        out["semidistributive"] =
            an.barnard_meet_semidistributive() && an.barnard_join_semidistributive();
        out["trim"] = an.is_trim();
        out["height"] = l.poset.height();
        out["join_irreducibles"] = an.join_irreducibles().size();
        out["meet_irreducibles"] = an.meet_irreducibles().size();
      }
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    if (v_lattice->parsed()) {
      check_lattice_cap(opt, max_n);
      return report_exit(verify_lattice(max_n, opt.jobs));
    }
    if (v_semi->parsed()) {
      check_lattice_cap(opt, max_n);
      return report_exit(verify_semidistributive(max_n, opt.jobs));
    }
    if (v_trim->parsed()) {
      check_lattice_cap(opt, max_n);
      return report_exit(verify_trim(max_n, opt.jobs));
    }
    if (v_dist->parsed()) {
      check_lattice_cap(opt, max_n);
      return report_exit(verify_distributive(max_n, opt.jobs));
    }
    if (v_int->parsed()) {
      check_lattice_cap(opt, max_n);
      return report_exit(verify_intervals(max_n, opt.jobs));
    }
    if (v_broom->parsed()) {
      return report_exit(verify_broom_report(broom_k, broom_n, opt.perm_cap));
    }
    if (sort_cmd->parsed()) {
      std::cout << format_permutation(stack_sort(parse_permutation(sort_text))) << "\n";
      return kExitOk;
    }
    if (pre_cmd->parsed()) {
      if (pre_n > opt.perm_cap)
        throw SizeCapError("n = " + std::to_string(pre_n) + " exceeds the permutation cap " +
                           std::to_string(opt.perm_cap) + " (raise it with --perm-cap)");
      const auto pre = stack_preimages(delta_ideal(pre_k, pre_n), pre_n, opt.perm_cap);
      for (const Permutation& p : pre) std::cout << format_permutation(p) << "\n";
      std::cerr << pre.size() << " preimages\n";
      return kExitOk;
    }
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const TreeParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
