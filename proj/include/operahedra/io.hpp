#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "operahedra/mn_lattice.hpp"
#include "operahedra/nesting.hpp"
#include "operahedra/plane_tree.hpp"
#include "operahedra/poset.hpp"
#include "operahedra/theta.hpp"

namespace operahedra {

using Json = nlohmann::ordered_json;

inline Json tree_to_json(const PlaneTree& t) {
  Json ch = Json::array();
  for (int v = 0; v <= t.n(); ++v) ch.push_back(t.children(v));
  return Json{{"children", ch}};
}

inline PlaneTree tree_from_json(const Json& j) {
  std::vector<std::vector<int>> ch;
  for (const auto& row : j.at("children")) ch.push_back(row.get<std::vector<int>>());
  return PlaneTree(std::move(ch));
}

inline Json nesting_to_json(const Nesting& n) {
  Json out = Json::array();
  for (VertexSet tube : n.tubes) out.push_back(set_vertices(tube));
  return out;
}

inline Json theta_pair_to_json(const ThetaPair& p) {
  Json rho = Json::object();
  for (std::size_t v = 1; v < p.rho.at.size(); ++v)
    rho[std::to_string(v)] = set_vertices(p.rho.at[v]);
  return Json{{"lambda", p.lambda.word}, {"rho", rho}};
}

inline Json poset_to_json(const FinitePoset& p) {
  Json elements = Json::array();
  for (int i = 0; i < p.size(); ++i) elements.push_back(p.label(i));
  Json covers = Json::array();
  for (auto [a, b] : p.covers()) covers.push_back(Json::array({a, b}));
  return Json{{"elements", elements}, {"covers", covers}};
}

inline const char* move_color(MoveKind k) {
  return k == MoveKind::permutohedron ? "purple" : "orange";
}

/// Hasse diagram, drawn bottom-up with one rank per poset height; covers may
/// carry per-edge colors (move types use purple/orange).
inline std::string poset_to_dot(const FinitePoset& p,
                                const std::vector<std::string>& edge_colors = {}) {
  std::string out = "digraph hasse {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  const int h = p.height();
  for (int level = 0; level <= h; ++level) {
    std::string row;
    for (int i = 0; i < p.size(); ++i)
      if (p.element_height(i) == level) row += " v" + std::to_string(i) + ";";
    if (!row.empty()) out += "  { rank=same;" + row + " }\n";
  }
  for (int i = 0; i < p.size(); ++i) {
    std::string label = p.label(i).empty() ? std::to_string(i) : p.label(i);
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out += "  v" + std::to_string(i) + " [label=\"" + escaped + "\"];\n";
  }
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [a, b] = p.covers()[e];
    out += "  v" + std::to_string(a) + " -> v" + std::to_string(b);
    if (e < edge_colors.size() && !edge_colors[e].empty())
      out += " [color=" + edge_colors[e] + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

inline std::string theta_lattice_to_dot(const ThetaLattice& l) {
  std::vector<std::string> colors;
  for (MoveKind k : l.cover_kinds) colors.emplace_back(move_color(k));
  return poset_to_dot(l.poset, colors);
}

inline std::string mn_lattice_to_dot(const MnLattice& l) {
  std::vector<std::string> colors;
  for (MoveKind k : l.cover_kinds) colors.emplace_back(move_color(k));
  return poset_to_dot(l.poset, colors);
}

/// One pair as a forest drawing with the non-singleton ornaments rendered as
/// nested clusters; the extension is the graph label.
inline std::string theta_pair_to_dot(const PlaneTree& t, const ThetaPair& p) {
  require(is_theta_pair(t, p), "dot export: invalid pair");
  const int n = t.n();
  struct Cluster {
    int vertex;
    std::vector<int> child_clusters;
    std::vector<int> own_vertices;
  };
  std::vector<int> owners;  // non-singleton ornament owners, by size descending
  for (int v = 1; v <= n; ++v)
    if (set_size(p.rho.at[static_cast<std::size_t>(v)]) >= 2) owners.push_back(v);
  std::sort(owners.begin(), owners.end(), [&](int a, int b) {
    return set_size(p.rho.at[static_cast<std::size_t>(a)]) >
           set_size(p.rho.at[static_cast<std::size_t>(b)]);
  });
  std::vector<Cluster> clusters;
  std::vector<int> cluster_of_owner(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> roots;
  for (int v : owners) {
    // Smallest strictly containing ornament was emitted earlier (larger size).
    int parent = -1;
    int best = kMaxVertices + 1;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const VertexSet o = p.rho.at[static_cast<std::size_t>(clusters[c].vertex)];
      if (set_contains(o, v) && set_size(o) < best && clusters[c].vertex != v) {
        parent = static_cast<int>(c);
        best = set_size(o);
      }
    }
    clusters.push_back({v, {}, {}});
    cluster_of_owner[static_cast<std::size_t>(v)] = static_cast<int>(clusters.size()) - 1;
    if (parent >= 0)
      clusters[static_cast<std::size_t>(parent)].child_clusters.push_back(
          static_cast<int>(clusters.size()) - 1);
    else
      roots.push_back(static_cast<int>(clusters.size()) - 1);
  }
  std::vector<int> loose;
  for (int v = 1; v <= n; ++v) {
    int parent = -1;
    int best = kMaxVertices + 1;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const VertexSet o = p.rho.at[static_cast<std::size_t>(clusters[c].vertex)];
      if (set_contains(o, v) && set_size(o) < best) {
        parent = static_cast<int>(c);
        best = set_size(o);
      }
    }
    if (parent >= 0)
      clusters[static_cast<std::size_t>(parent)].own_vertices.push_back(v);
    else
      loose.push_back(v);
  }

  std::string out = "digraph ornamented_forest {\n  rankdir=BT;\n  node [shape=circle];\n";
  out += "  label=\"extension: " + word_to_string(p.lambda.word) + "\";\n";
  auto emit = [&](auto&& self, int c, int depth) -> void {
    const Cluster& cl = clusters[static_cast<std::size_t>(c)];
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    out += pad + "subgraph cluster_orn_" + std::to_string(cl.vertex) + " {\n";
    out += pad + "  color=red; label=\"" + std::to_string(cl.vertex) + "\";\n";
    for (int v : cl.own_vertices) out += pad + "  n" + std::to_string(v) + ";\n";
    for (int cc : cl.child_clusters) self(self, cc, depth + 1);
    out += pad + "}\n";
  };
  for (int c : roots) emit(emit, c, 1);
  for (int v : loose) out += "  n" + std::to_string(v) + ";\n";
  for (int v = 1; v <= n; ++v)
    if (t.parent(v) != 0)
      out += "  n" + std::to_string(t.parent(v)) + " -> n" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace operahedra
