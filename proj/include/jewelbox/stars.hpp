#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jewelbox/rng.hpp"
#include "jewelbox/words.hpp"

namespace jewelbox::stars {

/// Directions of a rank-n rose: 2(i-1) is e_i, 2(i-1)+1 is its reverse.
using Dir = int;
using DirSet = std::uint32_t;

inline Dir involute(Dir d) { return d ^ 1; }
inline int petal_of(Dir d) { return d / 2; }  // 0-based petal index
inline Dir dir_of_letter(freegroup::Letter l) {
  return 2 * ((l > 0 ? l : -l) - 1) + (l < 0 ? 1 : 0);
}
inline freegroup::Letter letter_of_dir(Dir d) {
  return (d % 2 == 0) ? d / 2 + 1 : -(d / 2 + 1);
}
inline DirSet dirbit(Dir d) { return DirSet{1} << d; }
inline bool dir_in(DirSet s, Dir d) { return (s >> d) & 1u; }

struct DirectionSet {
  int rank = 0;
  int count() const { return 2 * rank; }
  DirSet all() const { return (DirSet{1} << count()) - 1; }
};

std::string dirset_str(DirSet s, int rank);

/// Partition of E into two sides with at least two elements each, splitting
/// some petal. Canonical representative: the side containing direction 0.
struct IdealEdge {
  int rank = 0;
  DirSet side = 0;

  DirSet other(const DirectionSet& e) const { return e.all() & ~side; }
  bool splits(int petal) const {
    return dir_in(side, 2 * petal) != dir_in(side, 2 * petal + 1);
  }
  std::vector<int> split_petals() const;
  std::string str() const;
  bool operator==(const IdealEdge&) const = default;
};

/// Throws jewelbox::error unless the partition is a genuine ideal edge.
IdealEdge make_ideal_edge(int rank, DirSet side);

/// Some side of a is disjoint from some side of b.
bool compatible(const IdealEdge& a, const IdealEdge& b);

/// All ideal edges of the rank-n rose, canonical and sorted.
std::vector<IdealEdge> enumerate_ideal_edges(int rank);

/// Star graph of a cyclically reduced edge path: an edge {a_i, inv(a_{i+1})}
/// per letter, indices cyclic.
struct StarGraph {
  int rank = 0;
  std::vector<std::pair<Dir, Dir>> edges;

  /// Number of edges with one endpoint in X and one in Y (disjoint sets).
  long long crossings(DirSet x, DirSet y) const;

  /// Edge-multiset JSON: {"vertices": 2n, "edges": [[a,b], ...]} with edges
  /// sorted for a canonical form.
  std::string json() const;
};

StarGraph star_graph(const freegroup::CyclicWord& w);
StarGraph star_graph_of_dirs(int rank, const std::vector<Dir>& dirs);

/// Lexicographically compared crossing-count vector: W0 aggregate first,
/// then one coordinate per word of the evaluation context, in order.
/// `complete` marks sources whose coordinate list is exhaustive (synthetic
/// data); an all-equal comparison is then a genuine tie instead of a
/// truncation artifact.
struct NormVector {
  std::vector<long long> coords;
  bool complete = false;

  bool is_zero() const;
  bool lex_positive() const;  // all coords >= 0 and some coord > 0
};

enum class Cmp { Less, Equal, Greater };
Cmp compare(const NormVector& a, const NormVector& b);

NormVector add(const NormVector& a, const NormVector& b);
NormVector sub(const NormVector& a, const NormVector& b);

/// Norms of a marked rose over the canonical class list up to a length
/// budget: coordinate w counts via the star graph of the cyclically reduced
/// image of w.
struct MarkingSource {
  int rank = 0;
  freegroup::Marking marking;
  int budget = 0;
  std::vector<freegroup::CyclicWord> words;
  std::vector<StarGraph> word_stars;
  std::vector<StarGraph> w0_stars;

  static MarkingSource make(const freegroup::Marking& g, int budget_len);
};

/// Synthetic dot products: positive integer vectors per unordered direction
/// pair; everything downstream uses only positivity and distributivity.
struct DotData {
  int rank = 0;
  int coord_len = 0;
  std::vector<std::vector<std::vector<long long>>> pair_coords;  // [d][d'][c]

  static DotData random(int rank, int coord_len, Rng& rng);
};

/// Either evaluation source behind one surface.
class DotSource {
 public:
  explicit DotSource(const MarkingSource& m) : marking_(&m) {}
  explicit DotSource(const DotData& d) : synthetic_(&d) {}

  int rank() const;
  bool complete() const;
  /// Throws overlap when X and Y intersect.
  NormVector dot(DirSet x, DirSet y) const;
  /// dot(X, E - X); throws degenerate when X is empty or all of E.
  NormVector norm(DirSet x) const;
  /// Unchecked dot that treats empty sides as zero (for the residual identity).
  NormVector raw_dot(DirSet x, DirSet y) const;

 private:
  const MarkingSource* marking_ = nullptr;
  const DotData* synthetic_ = nullptr;
};

/// alpha splits petal i and |alpha| > |e_i| lexicographically. An all-equal
/// comparison throws insufficient_words on truncated sources.
bool is_ascending(const DotSource& src, const IdealEdge& alpha, int petal);

/// Ascending for some split petal.
bool is_ascending_edge(const DotSource& src, const IdealEdge& alpha);

/// (|X u Z| + |Y u Z|) - (|X| + |Y| + 2 Z.W) for a 4-part labeled partition
/// of E (parts may be empty). Must be the zero vector.
NormVector key_lemma_residual(const DotSource& src, DirSet x, DirSet y, DirSet z, DirSet w);

/// A direction's norm uses the singleton side {d}; an ideal edge's its side.
struct NormObject {
  bool edge = false;
  DirSet side = 0;  // singleton for directions
  std::string str(int rank) const;
};

struct Witness {
  std::vector<Dir> word;  // cyclically reduced petal word
  long long value_a = 0, value_b = 0;
};

/// Searches cyclically reduced petal words of length <= 4 (the shapes the
/// separation argument constructs) for one whose crossing counts differ.
std::optional<Witness> distinct_norms_witness(int rank, const NormObject& a,
                                              const NormObject& b);

}  // namespace jewelbox::stars
