#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jewelbox/errors.hpp"

namespace jewelbox::graphs {

/// Edge subsets are bitmasks over the edge index set Delta = {0,...,m}.
using EdgeMask = std::uint32_t;

inline int popcount(EdgeMask m) { return __builtin_popcount(m); }
inline bool contains(EdgeMask s, int e) { return (s >> e) & 1u; }
inline EdgeMask bit(int e) { return EdgeMask{1} << e; }

/// Canonical subset order for deterministic listings: popcount, then mask.
bool subset_less(EdgeMask a, EdgeMask b);

/// Finite connected multigraph (loops allowed). Directions are the oriented
/// edges: direction 2e points u->v, direction 2e+1 points v->u, for edge
/// e = (u, v). The terminus of a direction is the vertex it points into.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  EdgeMask full_mask() const { return edge_count() == 32 ? ~EdgeMask{0} : bit(edge_count()) - 1; }
  bool is_loop(int e) const { return edges[e].first == edges[e].second; }
  int terminus(int direction) const {
    auto [u, v] = edges[direction / 2];
    return direction % 2 == 0 ? v : u;
  }
  int valence(int v) const;
  /// First Betti number of the whole graph.
  int rank() const;
};

Graph rose(int n);

struct ValidationReport {
  bool connected = false;
  std::vector<int> separating_edges;
  int min_valence = 0;

  bool valid_ambient() const {
    return connected && separating_edges.empty() && min_valence >= 3;
  }
};

ValidationReport validate(const Graph& g);

/// Vertices of the closed subgraph spanned by the edge set.
std::vector<int> subgraph_vertices(const Graph& g, EdgeMask s);

/// Number of connected components of the closed subgraph (0 for empty).
int subgraph_components(const Graph& g, EdgeMask s);

/// First Betti number E - V + #components of the closed subgraph.
int rank_h1(const Graph& g, EdgeMask s);

/// True iff no edge of s separates the closed subgraph spanned by s.
bool is_core(const Graph& g, EdgeMask s);

/// The unique maximal core subset of s (empty iff s is a forest).
EdgeMask core_of(const Graph& g, EdgeMask s);

bool is_forest(const Graph& g, EdgeMask s);

/// All nonempty core subsets including Delta, in canonical order.
/// Throws too_large past 20 edges.
std::vector<EdgeMask> enumerate_cores(const Graph& g);

/// All maximal trees (edge sets), in canonical order. A rose has one, the
/// empty tree.
std::vector<EdgeMask> spanning_trees(const Graph& g);

struct ForestCollapse {
  Graph source;
  EdgeMask forest = 0;
  Graph target;
  /// relabel[e] = index of e in the target, or -1 for collapsed edges.
  std::vector<int> relabel;
  /// vertex_map[v] = vertex of the target that v lands on.
  std::vector<int> vertex_map;

  EdgeMask push_forward(EdgeMask s) const;
  EdgeMask pull_back(EdgeMask s_prime) const;
};

/// Collapse each edge of the forest phi to a point. Throws not_a_forest if
/// phi contains a core.
ForestCollapse collapse(const Graph& g, EdgeMask phi);

/// Section of the induced map on cores: A' -> core(A' union Phi).
/// Throws not_core unless a_prime is core in the target.
EdgeMask core_section(const ForestCollapse& c, EdgeMask a_prime);

std::string mask_str(EdgeMask s, int m);

}  // namespace jewelbox::graphs
