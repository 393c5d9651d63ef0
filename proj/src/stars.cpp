#include "jewelbox/stars.hpp"

#include <algorithm>

namespace jewelbox::stars {

std::string dirset_str(DirSet s, int rank) {
  std::string out;
  bool first = true;
  for (Dir d = 0; d < 2 * rank; ++d)
    if (dir_in(s, d)) {
      if (!first) out += ",";
      if (d % 2) out += "~";
      out += "e" + std::to_string(d / 2 + 1);
      first = false;
    }
  return out;
}

std::vector<int> IdealEdge::split_petals() const {
  std::vector<int> out;
  for (int i = 0; i < rank; ++i)
    if (splits(i)) out.push_back(i);
  return out;
}

std::string IdealEdge::str() const { return dirset_str(side, rank) + "|~"; }

IdealEdge make_ideal_edge(int rank, DirSet side) {
  DirectionSet e{rank};
  if (!dir_in(side, 0)) side = e.all() & ~side;
  IdealEdge a{rank, side};
  int s = __builtin_popcount(side);
  if (s < 2 || 2 * rank - s < 2) throw error("ideal edge sides need two elements each");
  if (a.split_petals().empty()) throw error("ideal edge must split some petal");
  return a;
}

bool compatible(const IdealEdge& a, const IdealEdge& b) {
  DirectionSet e{a.rank};
  DirSet as = a.side, ac = a.other(e), bs = b.side, bc = b.other(e);
  return (as & bs) == 0 || (as & bc) == 0 || (ac & bs) == 0 || (ac & bc) == 0;
}

std::vector<IdealEdge> enumerate_ideal_edges(int rank) {
  DirectionSet e{rank};
  std::vector<IdealEdge> out;
  // Canonical representatives all contain direction 0.
  for (DirSet side = 1; side <= e.all(); side += 2) {
    int s = __builtin_popcount(side);
    if (s < 2 || 2 * rank - s < 2) continue;
    IdealEdge a{rank, side};
    if (a.split_petals().empty()) continue;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const IdealEdge& x, const IdealEdge& y) {
    int px = __builtin_popcount(x.side), py = __builtin_popcount(y.side);
    if (px != py) return px < py;
    return x.side < y.side;
  });
  return out;
}

std::string StarGraph::json() const {
  std::vector<std::pair<Dir, Dir>> sorted;
  for (auto [a, b] : edges) sorted.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(sorted.begin(), sorted.end());
  std::string s = "{\"vertices\": " + std::to_string(2 * rank) + ", \"edges\": [";
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i) s += ", ";
    s += "[" + std::to_string(sorted[i].first) + "," + std::to_string(sorted[i].second) + "]";
  }
  return s + "]}";
}

long long StarGraph::crossings(DirSet x, DirSet y) const {
  long long c = 0;
  for (auto [a, b] : edges)
    if ((dir_in(x, a) && dir_in(y, b)) || (dir_in(y, a) && dir_in(x, b))) ++c;
  return c;
}

StarGraph star_graph_of_dirs(int rank, const std::vector<Dir>& dirs) {
  StarGraph st{rank, {}};
  size_t k = dirs.size();
  for (size_t i = 0; i < k; ++i)
    st.edges.emplace_back(dirs[i], involute(dirs[(i + 1) % k]));
  return st;
}

StarGraph star_graph(const freegroup::CyclicWord& w) {
  if (w.length() == 0) throw empty_word("star graph of the trivial class");
  std::vector<Dir> dirs;
  for (freegroup::Letter l : w.letters) dirs.push_back(dir_of_letter(l));
  return star_graph_of_dirs(w.rank, dirs);
}

bool NormVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](long long c) { return c == 0; });
}

bool NormVector::lex_positive() const {
  bool some = false;
  for (long long c : coords) {
    if (c < 0) return false;
    if (c > 0) some = true;
  }
  return some;
}

Cmp compare(const NormVector& a, const NormVector& b) {
  size_t n = std::min(a.coords.size(), b.coords.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.coords[i] < b.coords[i]) return Cmp::Less;
    if (a.coords[i] > b.coords[i]) return Cmp::Greater;
  }
  return Cmp::Equal;
}

NormVector add(const NormVector& a, const NormVector& b) {
  NormVector r = a;
  r.complete = a.complete && b.complete;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

NormVector sub(const NormVector& a, const NormVector& b) {
  NormVector r = a;
  r.complete = a.complete && b.complete;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

MarkingSource MarkingSource::make(const freegroup::Marking& g, int budget_len) {
  MarkingSource s;
  s.rank = g.rank;
  s.marking = g;
  s.budget = budget_len;
  s.words = freegroup::enumerate_classes(g.rank, budget_len);
  for (const auto& w : s.words) {
    auto img = freegroup::cyclic_canonical(g.apply(freegroup::Word{g.rank, w.letters}));
    s.word_stars.push_back(star_graph(img));
  }
  for (const auto& w : freegroup::generate_W0(g.rank)) {
    auto img = freegroup::cyclic_canonical(g.apply(freegroup::Word{g.rank, w.letters}));
    s.w0_stars.push_back(star_graph(img));
  }
  return s;
}

DotData DotData::random(int rank, int coord_len, Rng& rng) {
  DotData d;
  d.rank = rank;
  d.coord_len = coord_len;
  int n = 2 * rank;
  d.pair_coords.assign(n, std::vector<std::vector<long long>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<long long> v(coord_len);
      for (auto& c : v) c = rng.range(1, 9);
      d.pair_coords[a][b] = v;
      d.pair_coords[b][a] = std::move(v);
    }
  return d;
}

int DotSource::rank() const { return marking_ ? marking_->rank : synthetic_->rank; }

bool DotSource::complete() const { return synthetic_ != nullptr; }

NormVector DotSource::raw_dot(DirSet x, DirSet y) const {
  if (marking_) {
    NormVector v;
    v.complete = false;
    long long agg = 0;
    for (const auto& st : marking_->w0_stars) agg += st.crossings(x, y);
    v.coords.push_back(agg);
    for (const auto& st : marking_->word_stars) v.coords.push_back(st.crossings(x, y));
    return v;
  }
  NormVector v;
  v.complete = true;
  v.coords.assign(synthetic_->coord_len, 0);
  int n = 2 * synthetic_->rank;
  for (int a = 0; a < n; ++a) {
    if (!dir_in(x, a)) continue;
    for (int b = 0; b < n; ++b) {
      if (!dir_in(y, b)) continue;
      const auto& pc = synthetic_->pair_coords[a][b];
      for (int c = 0; c < synthetic_->coord_len; ++c) v.coords[c] += pc[c];
    }
  }
  return v;
}

NormVector DotSource::dot(DirSet x, DirSet y) const {
  if ((x & y) != 0) throw overlap("dot product needs disjoint direction sets");
  return raw_dot(x, y);
}

NormVector DotSource::norm(DirSet x) const {
  DirectionSet e{rank()};
  if (x == 0 || x == e.all()) throw degenerate("norm of the empty or full direction set");
  return raw_dot(x, e.all() & ~x);
}

bool is_ascending(const DotSource& src, const IdealEdge& alpha, int petal) {
  if (!alpha.splits(petal)) return false;
  NormVector na = src.norm(alpha.side);
  NormVector ne = src.norm(dirbit(2 * petal));
  switch (compare(na, ne)) {
    case Cmp::Greater:
      return true;
    case Cmp::Less:
      return false;
    case Cmp::Equal:
      if (src.complete()) return false;  // a genuine tie is not strictly greater
      throw insufficient_words("norm comparison tied at word budget for " + alpha.str());
  }
  return false;
}

bool is_ascending_edge(const DotSource& src, const IdealEdge& alpha) {
  for (int i : alpha.split_petals())
    if (is_ascending(src, alpha, i)) return true;
  return false;
}

NormVector key_lemma_residual(const DotSource& src, DirSet x, DirSet y, DirSet z, DirSet w) {
  DirectionSet e{src.rank()};
  if ((x & y) || (x & z) || (x & w) || (y & z) || (y & w) || (z & w) ||
      (x | y | z | w) != e.all())
    throw not_a_partition("key lemma needs a labeled partition of E into X,Y,Z,W");
  DirSet all = e.all();
  auto nrm = [&](DirSet s) { return src.raw_dot(s, all & ~s); };
  NormVector lhs = add(nrm(x | z), nrm(y | z));
  NormVector rhs = add(add(nrm(x), nrm(y)), add(src.raw_dot(z, w), src.raw_dot(z, w)));
  return sub(lhs, rhs);
}

std::string NormObject::str(int rank) const {
  if (edge) return dirset_str(side, rank) + "|~";
  return dirset_str(side, rank);
}

std::optional<Witness> distinct_norms_witness(int rank, const NormObject& a,
                                              const NormObject& b) {
  DirectionSet e{rank};
  DirSet ac = e.all() & ~a.side, bc = e.all() & ~b.side;
  std::vector<Dir> word;
  std::optional<Witness> found;
  auto visit = [&]() -> bool {
    // Cyclic reducedness across the wrap.
    if (word.size() > 1 && word.front() == involute(word.back())) return false;
    StarGraph st = star_graph_of_dirs(rank, word);
    long long va = st.crossings(a.side, ac);
    long long vb = st.crossings(b.side, bc);
    if (va != vb) {
      found = Witness{word, va, vb};
      return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, int len) -> bool {
    if (static_cast<int>(word.size()) == len) return visit();
    for (Dir d = 0; d < e.count(); ++d) {
      if (!word.empty() && word.back() == involute(d)) continue;
      word.push_back(d);
      if (self(self, len)) return true;
      word.pop_back();
    }
    return false;
  };
  for (int len = 1; len <= 4; ++len) {
    word.clear();
    if (rec(rec, len)) return found;
  }
  return std::nullopt;
}

}  // namespace jewelbox::stars
