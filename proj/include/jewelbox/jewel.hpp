#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jewelbox/graphs.hpp"
#include "jewelbox/rational.hpp"

namespace jewelbox::jewel {

using graphs::EdgeMask;
using graphs::Graph;

/// Truncation constants c_1 < ... < c_n < c_{n+1} <= 1/3, one per core rank,
/// with c_{r+1} > 2 c_r. c(r) is the shaving depth for cores of rank r.
/// Indexing by rank (rather than by edge count, as the Feynman-integral
/// "graph polytope" does with the same truncation idea) is what makes the
/// collapsed-graph jewels sit as faces of the bigger ones.
struct TruncationSchedule {
  int rank = 0;
  std::vector<Rat> c;  // c[r-1] = c_r, r = 1..rank+1

  const Rat& at(int r) const { return c.at(r - 1); }
  bool valid() const;
};

/// Default schedule c_r = 3^(r-n-2), so c_n = 1/9 and c_{n+1} = 1/3.
TruncationSchedule make_schedule(int n);

struct Constraint {
  EdgeMask support = 0;  // sum over the support >= rhs
  Rat rhs;
  bool from_core = false;  // false: non-loop singleton at 0
};

/// One (maximal tree, petal order) vertex of the jewel.
struct CombinatorialVertex {
  EdgeMask tree = 0;
  std::vector<int> order;  // non-tree edges in chain order
  std::vector<Rat> coords;
};

/// Codimension-k face datum of Proposition-style chains: a forest of
/// non-loop singletons plus a strictly nested run of proper cores C_j with
/// core(F u C_j) = C_j and F u C_r a proper subset of Delta.
struct FaceChain {
  std::vector<int> forest_singletons;  // sorted edge indices
  std::vector<EdgeMask> cores;         // strictly nested, ascending

  int codim() const {
    return static_cast<int>(forest_singletons.size() + cores.size());
  }
  /// Union blocks V_0,...,V_r of the associated stratification, where
  /// V_0 = Delta - U_k and V_l peels off the nested cores outermost first.
  std::vector<EdgeMask> v_blocks(const Graph& g) const;
  /// A_0 = Delta, A_l = the l-th core from the outside in.
  std::vector<EdgeMask> a_chain(const Graph& g) const;
};

struct Face {
  std::vector<int> vertex_ids;  // indices into JewelPolytope::vertices
  int dim = 0;
};

struct JewelPolytope {
  Graph graph;
  TruncationSchedule schedule;
  std::vector<Constraint> constraints;          // the set S of Section-7 style
  std::vector<std::vector<Rat>> vertices;       // V-representation
  std::vector<CombinatorialVertex> combinatorial;  // aligned with vertices
  std::vector<Face> faces;                      // all faces including the top
  std::vector<int> f_vector;                    // proper faces by dimension

  int m() const { return graph.edge_count() - 1; }
  /// Active constraint indices at an exact point.
  std::vector<int> active_constraints(const std::vector<Rat>& x) const;
  bool satisfies(const std::vector<Rat>& x) const;
};

/// H-representation only: one inequality per non-loop singleton (rhs 0) and
/// per proper core subset (rhs c_rank), plus the implicit sum(x) = 1.
JewelPolytope h_representation(const Graph& g, const TruncationSchedule& sched);

/// One vertex per (maximal tree, total order on the complement), coordinates
/// solved from the maximal chain. Throws infeasible_schedule if a solved
/// point violates the H-representation.
std::vector<CombinatorialVertex> vertices_combinatorial(const Graph& g,
                                                        const TruncationSchedule& sched);

/// Independent vertex enumeration: solve every m-subset of constraints with
/// the affine condition, keep feasible solutions, dedupe. Throws too_large
/// past 32 constraints (room for the rank-5 rose).
std::vector<std::vector<Rat>> vertices_oracle(const JewelPolytope& p, int jobs = 1);

/// All chains of codimension k per the face characterization.
std::vector<FaceChain> face_chains(const Graph& g, const TruncationSchedule& sched, int k);

/// Builds the face lattice (as vertex sets closed under intersection of
/// facet incidences) and the f-vector over proper faces. Requires V-rep.
void face_lattice(JewelPolytope& p);

/// Fully built jewel: H-rep, combinatorial vertices (checked against the
/// oracle when `check_oracle`), face lattice.
JewelPolytope build(const Graph& g, const TruncationSchedule& sched, bool check_oracle = true,
                    int jobs = 1);

/// Identification of J(G') with the face {x_i = 0 : i in Phi} of J(G):
/// result[i] = index in p_big.vertices of the zero-padded i-th vertex of
/// p_small. Throws mismatched_schedule / not_in_jewel on failure.
std::vector<int> face_of_collapse(const graphs::ForestCollapse& c, const JewelPolytope& p_big,
                                  const JewelPolytope& p_small);

/// The face (vertex id set) of the polytope selected by a chain; the chain's
/// constraints are exactly the ones active on the whole face.
std::vector<int> face_vertices_of_chain(const JewelPolytope& p, const FaceChain& chain);

}  // namespace jewelbox::jewel
