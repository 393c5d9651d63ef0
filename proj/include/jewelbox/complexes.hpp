#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jewelbox/rational.hpp"
#include "jewelbox/stars.hpp"

namespace jewelbox::complexes {

/// Simplicial flag complex: simplices are exactly the cliques of a symmetric
/// adjacency relation on labeled vertices.
struct FlagComplex {
  std::vector<std::string> labels;
  std::vector<std::vector<char>> adj;

  int vertex_count() const { return static_cast<int>(labels.size()); }
  bool adjacent(int a, int b) const { return adj[a][b] != 0; }

  /// Simplices grouped by dimension (each as a sorted vertex list).
  /// Throws too_large past the simplex budget.
  std::vector<std::vector<std::vector<int>>> simplices(long long budget = 1000000) const;

  /// -1 for the empty complex.
  int dimension() const;
};

FlagComplex make_flag_complex(std::vector<std::string> labels,
                              const std::vector<std::pair<int, int>>& edges);

struct HomologyReport {
  /// reduced_betti[d] is the rank of reduced homology in degree d - 1, so
  /// index 0 holds degree -1 (nonzero exactly for the empty complex).
  std::vector<long long> reduced_betti;
  /// torsion[d] lists the invariant factors > 1 in degree d - 1.
  std::vector<std::vector<Int>> torsion;
  int dim = -1;

  long long betti(int degree) const;  // reduced, degree >= -1
  std::vector<Int> torsion_at(int degree) const;
  bool connected() const { return betti(-1) == 0 && betti(0) == 0; }
  bool acyclic() const;  // all reduced homology vanishes (contractible-like)
};

/// Reduced integer simplicial homology via Smith normal form of the boundary
/// matrices (sparse unit-pivot elimination with a dense exact fallback).
HomologyReport homology(const FlagComplex& c, int max_dim = -1);

/// Removes dominated vertices (closed neighborhood contained in another's)
/// until none remain. A strong collapse: the induced subcomplex carries the
/// same homotopy type, so homology may be computed there instead.
FlagComplex strong_collapse(const FlagComplex& c);

/// homology(strong_collapse(c)); the dim field refers to the collapsed core,
/// not c. Use when c has large simplices but a small core (ascending links).
HomologyReport homology_collapsed(const FlagComplex& c);

enum class Pi1 { Trivial, Inconclusive, NotRun };

struct SphericityReport {
  int expected_dim = 0;
  int dim = -1;
  bool dimension_matches = false;
  bool vanishing_below = false;    // reduced homology zero in degrees < expected
  bool vanishing_off_top = false;  // reduced homology zero in degrees != expected
  bool top_torsion_free = true;
  Pi1 pi1 = Pi1::NotRun;
  HomologyReport hom;

  bool homology_spherical() const { return vanishing_off_top && top_torsion_free; }
  std::string verdict() const;
};

/// Homology-level sphericity check with a bounded fundamental-group attempt
/// (edge-path-group presentation simplification) when expected_dim >= 2.
SphericityReport sphericity_report(const FlagComplex& c, int expected_dim);

/// Bounded edge-path-group triviality check; Trivial is certified,
/// Inconclusive means the simplification budget ran out.
Pi1 pi1_trivial(const FlagComplex& c, int effort = 2000);

/// Blocks X_1, X̄_1, ..., X_m, X̄_m, Y_1, ..., Y_k partitioning the
/// directions of a rose, with e_i in X_i and the designated petal norms
/// dominated by the block norms.
struct VDecomposition {
  int rank = 0;  // rank of the underlying rose
  int m = 0;
  int k = 0;
  std::vector<stars::DirSet> blocks;  // X_1, X̄_1, ..., X_m, X̄_m, Y_1..Y_k

  int block_count() const { return 2 * m + k; }
  stars::DirSet dirs_of(std::uint32_t block_mask) const;
  /// Structural validity: disjoint cover, e_i in X_i, sides nonempty.
  bool valid_structure() const;
};

/// Minimal V-decomposition on a rank-(m+k) rose: X_i = {e_i}, X̄_i = {ē_i},
/// Y_j = the petal pair {e_(m+j), ē_(m+j)}.
VDecomposition pair_block_decomposition(int m, int k);

/// V-ideal edges as block masks (canonical side contains block 0), sorted.
std::vector<std::uint32_t> enumerate_v_ideal_edges(const VDecomposition& v);

/// Flag complex of ascending V-ideal edges under block-level compatibility.
FlagComplex build_Z(const VDecomposition& v, const stars::DotSource& src);

/// Flag complex of all ascending ideal edges of a marked rose.
FlagComplex build_Z_rose(const stars::DotSource& src);

/// True when the V-ideal edge (as an E-partition) is descending, i.e. not
/// ascending for any split petal.
bool v_edge_descending(const VDecomposition& v, const stars::DotSource& src,
                       std::uint32_t block_mask);

/// Simplicial join, for the join-degree sanity fixture.
FlagComplex join(const FlagComplex& a, const FlagComplex& b);

}  // namespace jewelbox::complexes
