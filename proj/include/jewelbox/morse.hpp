#pragma once

#include <string>
#include <vector>

#include "jewelbox/complexes.hpp"
#include "jewelbox/graphs.hpp"
#include "jewelbox/stars.hpp"
#include "jewelbox/words.hpp"

namespace jewelbox::morse {

/// A vertex of the rose complex: rank-n rose with a Nielsen-verified marking.
struct MarkedRose {
  int rank = 0;
  freegroup::Marking marking;

  static MarkedRose make(const freegroup::Marking& g);  // verifies the marking
};

/// Pairwise-compatible ideal edges.
struct IdealTree {
  std::vector<stars::IdealEdge> edges;

  bool pairwise_compatible() const;
  std::string str() const;
};

/// Length of the cyclically reduced image of w, i.e. the total petal
/// crossing count of the marked image.
long long mu_norm(const MarkedRose& rho, const freegroup::CyclicWord& w);

/// The aggregate over the short-word set.
long long mu_zero(const MarkedRose& rho);

enum class MuOrder { Less, Greater, TieAtBudget };

/// Lexicographic comparison of mu(r1) vs mu(r2): aggregate first, then
/// per-class coordinates in canonical order through words of length
/// <= budget. Never fabricates equality.
MuOrder mu_compare(const MarkedRose& r1, const MarkedRose& r2, int budget);

/// 4 x (longest petal image), covering the separating word shapes.
int default_budget(const MarkedRose& rho);

/// Blowup of an ideal tree: the rose vertex opens into a tree with one new
/// edge per ideal edge; old petals keep their indices, new edges follow.
struct BlownUpGraph {
  graphs::Graph graph;
  int rank = 0;
  int base_vertex = 0;             // the region holding the fixed base direction
  graphs::EdgeMask new_edges = 0;  // bits rank..rank+|tree|-1
  /// Image of each generator as a closed edge path at base_vertex; letters
  /// are +-(edge index + 1).
  std::vector<std::vector<int>> images;
};

/// Throws incompatible unless the tree is pairwise compatible. Collapsing
/// new_edges recovers rho.
BlownUpGraph blowup(const MarkedRose& rho, const IdealTree& tree);

/// Collapse a maximal tree of old edges in the blowup, producing the
/// neighboring rose with its transported marking. Throws contains_blown_edge
/// / not_maximal_tree on bad input.
MarkedRose neighbor_rose(const MarkedRose& rho, const IdealTree& tree, graphs::EdgeMask t_old);

/// Marking-equivalence canonical key: minimize over petal relabelings of the
/// target and simultaneous conjugation.
std::string canonical_marking_key(const MarkedRose& rho);
bool equivalent(const MarkedRose& a, const MarkedRose& b);

struct AscendingLink {
  struct Vertex {
    IdealTree tree;
    graphs::EdgeMask collapse_tree = 0;
    MarkedRose rose;
  };
  std::vector<Vertex> vertices;
  complexes::FlagComplex complex;
  int skipped_equivalent_to_base = 0;  // recorded finding, expected 0
};

/// All roses rho^A_T with mu greater than mu(rho); adjacency when the union
/// of the ideal trees is again an ideal tree. Ties at the budget throw
/// tie_at_budget. Practical for rank <= 3.
AscendingLink ascending_link(const MarkedRose& rho, int budget);

}  // namespace jewelbox::morse
