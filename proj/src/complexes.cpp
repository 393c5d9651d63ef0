#include "jewelbox/complexes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "jewelbox/errors.hpp"

namespace jewelbox::complexes {

using stars::DirSet;
using stars::dir_in;
using stars::dirbit;

FlagComplex make_flag_complex(std::vector<std::string> labels,
                              const std::vector<std::pair<int, int>>& edges) {
  FlagComplex c;
  c.labels = std::move(labels);
  c.adj.assign(c.labels.size(), std::vector<char>(c.labels.size(), 0));
  for (auto [a, b] : edges) {
    c.adj[a][b] = 1;
    c.adj[b][a] = 1;
  }
  return c;
}

std::vector<std::vector<std::vector<int>>> FlagComplex::simplices(long long budget) const {
  std::vector<std::vector<std::vector<int>>> by_dim;
  int n = vertex_count();
  long long count = 0;
  std::vector<int> cur;
  auto emit = [&]() {
    if (++count > budget) throw too_large("simplex budget exceeded");
    int d = static_cast<int>(cur.size()) - 1;
    if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(d + 1);
    by_dim[d].push_back(cur);
  };
  auto rec = [&](auto&& self, int from) -> void {
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : cur)
        if (!adjacent(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(v);
      emit();
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return by_dim;
}

int FlagComplex::dimension() const {
  auto s = simplices();
  return static_cast<int>(s.size()) - 1;
}

namespace {

// Rank and invariant factors of an integer matrix, via sparse elimination on
// unit pivots with a dense exact SNF on whatever is left.
struct SmithResult {
  long long rank = 0;
  std::vector<Int> factors;  // invariant factors > 1
};

SmithResult smith(std::vector<std::map<int, long long>> cols) {
  SmithResult res;
  size_t ncols = cols.size();
  // rows_touch[r] = set of live columns with an entry in row r.
  std::map<int, std::set<int>> rows_touch;
  for (size_t j = 0; j < ncols; ++j)
    for (auto& [r, v] : cols[j])
      if (v != 0) rows_touch[r].insert(static_cast<int>(j));
  std::vector<char> col_live(ncols, 1);

  constexpr long long kOverflowGuard = 1ll << 46;
  while (true) {
    // Hunt a +-1 pivot, preferring sparse columns.
    int pc = -1, pr = -1;
    size_t best = SIZE_MAX;
    for (size_t j = 0; j < ncols; ++j) {
      if (!col_live[j]) continue;
      for (auto& [r, v] : cols[j]) {
        if (v == 1 || v == -1) {
          size_t cost = rows_touch[r].size() + cols[j].size();
          if (cost < best) {
            best = cost;
            pc = static_cast<int>(j);
            pr = r;
          }
          break;
        }
      }
    }
    if (pc < 0) break;
    long long pv = cols[pc][pr];
    auto touching = rows_touch[pr];
    for (int j : touching) {
      if (j == pc || !col_live[j]) continue;
      auto it = cols[j].find(pr);
      if (it == cols[j].end() || it->second == 0) continue;
      long long f = it->second / pv;  // pv is +-1
      for (auto& [r, v] : cols[pc]) {
        long long& tgt = cols[j][r];
        long long before = tgt;
        tgt -= f * v;
        if (std::abs(tgt) > kOverflowGuard) throw too_large("sparse elimination overflow");
        if (before == 0 && tgt != 0) rows_touch[r].insert(j);
        if (before != 0 && tgt == 0) rows_touch[r].erase(j);
      }
    }
    // Retire the pivot row and column.
    for (auto& [r, v] : cols[pc])
      if (v != 0) rows_touch[r].erase(pc);
    col_live[pc] = 0;
    for (int j : rows_touch[pr]) cols[j].erase(pr);
    rows_touch.erase(pr);
    ++res.rank;
  }

  // Dense exact SNF on the residue (usually empty).
  std::set<int> live_rows;
  std::vector<int> live_cols;
  for (size_t j = 0; j < ncols; ++j) {
    if (!col_live[j]) continue;
    bool any = false;
    for (auto& [r, v] : cols[j])
      if (v != 0) {
        live_rows.insert(r);
        any = true;
      }
    if (any) live_cols.push_back(static_cast<int>(j));
  }
  if (live_cols.empty()) return res;
  std::vector<int> row_ids(live_rows.begin(), live_rows.end());
  std::map<int, int> row_pos;
  for (size_t i = 0; i < row_ids.size(); ++i) row_pos[row_ids[i]] = static_cast<int>(i);
  size_t nr = row_ids.size(), nc = live_cols.size();
  std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc, 0));
  for (size_t cj = 0; cj < nc; ++cj)
    for (auto& [r, v] : cols[live_cols[cj]])
      if (v != 0) a[row_pos[r]][cj] = v;

  size_t t = 0;
  while (t < nr && t < nc) {
    // Smallest nonzero entry as pivot.
    size_t bi = SIZE_MAX, bj = SIZE_MAX;
    Int bestv = 0;
    for (size_t i = t; i < nr; ++i)
      for (size_t j = t; j < nc; ++j) {
        if (a[i][j] == 0) continue;
        Int av = abs(a[i][j]);
        if (bestv == 0 || av < bestv) {
          bestv = av;
          bi = i;
          bj = j;
        }
      }
    if (bestv == 0) break;
    std::swap(a[t], a[bi]);
    for (size_t i = 0; i < nr; ++i) std::swap(a[i][t], a[i][bj]);
    bool clean = true;
    for (size_t i = t + 1; i < nr; ++i) {
      if (a[i][t] == 0) continue;
      Int q = a[i][t] / a[t][t];
      for (size_t j = t; j < nc; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) clean = false;
    }
    for (size_t j = t + 1; j < nc; ++j) {
      if (a[t][j] == 0) continue;
      Int q = a[t][j] / a[t][t];
      for (size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; re-pivot
    Int d = abs(a[t][t]);
    if (d > 1) res.factors.push_back(d);
    ++res.rank;
    ++t;
  }
  // Normalize to the divisibility chain so torsion lists compare canonically.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < res.factors.size(); ++i)
      for (size_t j = i + 1; j < res.factors.size(); ++j) {
        if (res.factors[j] % res.factors[i] == 0) continue;
        Int g = gcd(res.factors[i], res.factors[j]);
        res.factors[j] = res.factors[i] / g * res.factors[j];
        res.factors[i] = g;
        changed = true;
      }
  }
  std::erase_if(res.factors, [](const Int& f) { return f == 1; });
  std::sort(res.factors.begin(), res.factors.end());
  return res;
}

}  // namespace

long long HomologyReport::betti(int degree) const {
  int idx = degree + 1;
  if (idx < 0 || idx >= static_cast<int>(reduced_betti.size())) return 0;
  return reduced_betti[idx];
}

std::vector<Int> HomologyReport::torsion_at(int degree) const {
  int idx = degree + 1;
  if (idx < 0 || idx >= static_cast<int>(torsion.size())) return {};
  return torsion[idx];
}

bool HomologyReport::acyclic() const {
  for (long long b : reduced_betti)
    if (b != 0) return false;
  for (const auto& t : torsion)
    if (!t.empty()) return false;
  return true;
}

HomologyReport homology(const FlagComplex& c, int max_dim) {
  auto by_dim = c.simplices();
  int top = static_cast<int>(by_dim.size()) - 1;
  int report_top = top;
  if (max_dim >= 0) {
    report_top = std::min(top, max_dim);
    top = std::min(top, max_dim + 1);  // one extra layer so im(d+1) is known
  }

  HomologyReport rep;
  rep.dim = static_cast<int>(by_dim.size()) - 1;

  // Augmented chain complex: degree -1 is the empty simplex, so that
  // homology comes out reduced. chain[d+1] = d-simplices.
  std::vector<std::vector<std::vector<int>>> chain(top + 2);
  chain[0] = {{}};
  for (int d = 0; d <= top; ++d) chain[d + 1] = by_dim[d];

  std::vector<std::map<std::vector<int>, int>> index(chain.size());
  for (size_t d = 0; d < chain.size(); ++d)
    for (size_t i = 0; i < chain[d].size(); ++i) index[d][chain[d][i]] = static_cast<int>(i);

  // boundary[d]: maps chain[d] -> chain[d-1]; boundary[0] is empty.
  std::vector<SmithResult> smiths(chain.size() + 1);
  std::vector<long long> ranks(chain.size() + 1, 0);
  std::vector<std::vector<Int>> factors(chain.size() + 1);
  for (size_t d = 1; d < chain.size(); ++d) {
    std::vector<std::map<int, long long>> cols(chain[d].size());
    for (size_t j = 0; j < chain[d].size(); ++j) {
      const auto& s = chain[d][j];
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        int sign = drop % 2 == 0 ? 1 : -1;
        cols[j][index[d - 1][face]] = sign;
      }
    }
    auto sr = smith(std::move(cols));
    ranks[d] = sr.rank;
    factors[d] = sr.factors;
  }

  rep.reduced_betti.assign(chain.size(), 0);
  rep.torsion.assign(chain.size(), {});
  for (size_t d = 0; d < chain.size(); ++d) {
    long long dim_d = static_cast<long long>(chain[d].size());
    long long bd = d == 0 ? 0 : ranks[d];
    long long bd1 = d + 1 < chain.size() ? ranks[d + 1] : 0;
    rep.reduced_betti[d] = dim_d - bd - bd1;
    if (d + 1 < chain.size()) rep.torsion[d] = factors[d + 1];
  }
  if (static_cast<int>(rep.reduced_betti.size()) > report_top + 2) {
    rep.reduced_betti.resize(report_top + 2);
    rep.torsion.resize(report_top + 2);
  }
  return rep;
}

FlagComplex strong_collapse(const FlagComplex& c) {
  int n = c.vertex_count();
  size_t words = (n + 63) / 64;
  // closed[v] = closed neighborhood of v as a bitset.
  std::vector<std::vector<std::uint64_t>> closed(n, std::vector<std::uint64_t>(words, 0));
  auto set_bit = [&](std::vector<std::uint64_t>& b, int i) { b[i / 64] |= 1ull << (i % 64); };
  for (int v = 0; v < n; ++v) {
    set_bit(closed[v], v);
    for (int u = 0; u < n; ++u)
      if (c.adjacent(v, u)) set_bit(closed[v], u);
  }
  std::vector<char> alive(n, 1);
  std::vector<std::uint64_t> alive_mask(words, 0);
  for (int v = 0; v < n; ++v) set_bit(alive_mask, v);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n && !changed; ++v) {
      if (!alive[v]) continue;
      for (int u = 0; u < n; ++u) {
        if (u == v || !alive[u] || !c.adjacent(u, v)) continue;
        bool dominated = true;
        for (size_t w = 0; w < words && dominated; ++w) {
          std::uint64_t nv = closed[v][w] & alive_mask[w];
          std::uint64_t nu = closed[u][w] & alive_mask[w];
          if ((nv & ~nu) != 0) dominated = false;
        }
        if (dominated) {
          alive[v] = 0;
          alive_mask[v / 64] &= ~(1ull << (v % 64));
          changed = true;
          break;
        }
      }
    }
  }

  std::vector<int> keep;
  for (int v = 0; v < n; ++v)
    if (alive[v]) keep.push_back(v);
  FlagComplex out;
  for (int v : keep) out.labels.push_back(c.labels[v]);
  out.adj.assign(keep.size(), std::vector<char>(keep.size(), 0));
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) out.adj[a][b] = c.adj[keep[a]][keep[b]];
  return out;
}

HomologyReport homology_collapsed(const FlagComplex& c) { return homology(strong_collapse(c)); }

Pi1 pi1_trivial(const FlagComplex& c, int effort) {
  auto by_dim = c.simplices();
  if (by_dim.empty()) return Pi1::Inconclusive;
  int n = c.vertex_count();
  // Spanning forest by BFS; only a connected complex can be certified.
  std::vector<int> parent(n, -2);
  std::vector<int> order;
  parent[0] = -1;
  order.push_back(0);
  for (size_t q = 0; q < order.size(); ++q) {
    int v = order[q];
    for (int u = 0; u < n; ++u)
      if (c.adjacent(v, u) && parent[u] == -2) {
        parent[u] = v;
        order.push_back(u);
      }
  }
  if (static_cast<int>(order.size()) != n) return Pi1::Inconclusive;

  // Generators: non-tree edges. Relators: triangle boundaries.
  std::map<std::pair<int, int>, int> gen;  // oriented non-tree edge -> index
  int gid = 1;
  auto is_tree = [&](int a, int b) { return parent[a] == b || parent[b] == a; };
  if (by_dim.size() >= 2)
    for (const auto& e : by_dim[1])
      if (!is_tree(e[0], e[1])) {
        gen[{e[0], e[1]}] = gid;
        gen[{e[1], e[0]}] = -gid;
        ++gid;
      }
  if (gid == 1) return Pi1::Trivial;  // tree: simply connected
  auto word_of = [&](int a, int b) -> std::vector<int> {
    auto it = gen.find({a, b});
    if (it == gen.end()) return {};
    return {it->second};
  };
  std::vector<std::vector<int>> relators;
  if (by_dim.size() >= 3)
    for (const auto& t : by_dim[2]) {
      std::vector<int> r;
      for (auto [a, b] : {std::pair{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}}) {
        auto w = word_of(a, b);
        r.insert(r.end(), w.begin(), w.end());
      }
      if (!r.empty()) relators.push_back(std::move(r));
    }

  std::vector<char> killed(gid, 0);
  auto simplify = [&](std::vector<int>& r) {
    std::vector<int> out;
    for (int g : r) {
      if (killed[std::abs(g)]) continue;
      if (!out.empty() && out.back() == -g)
        out.pop_back();
      else
        out.push_back(g);
    }
    while (out.size() >= 2 && out.front() == -out.back()) {
      out.erase(out.begin());
      out.pop_back();
    }
    r = std::move(out);
  };

  // Kill length-1 relators; substitute via length-2 relators. Bounded rounds.
  std::map<int, std::vector<int>> subst;  // g -> replacement word
  auto apply_subst = [&](std::vector<int>& r) {
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 50) {
      changed = false;
      std::vector<int> out;
      for (int g : r) {
        auto it = subst.find(g);
        if (it != subst.end()) {
          out.insert(out.end(), it->second.begin(), it->second.end());
          changed = true;
        } else {
          auto it2 = subst.find(-g);
          if (it2 != subst.end()) {
            for (auto rit = it2->second.rbegin(); rit != it2->second.rend(); ++rit)
              out.push_back(-*rit);
            changed = true;
          } else
            out.push_back(g);
        }
      }
      r = std::move(out);
      simplify(r);
    }
  };

  for (int round = 0; round < effort; ++round) {
    bool progress = false;
    for (auto& r : relators) {
      apply_subst(r);
      simplify(r);
      if (r.size() == 1) {
        killed[std::abs(r[0])] = 1;
        r.clear();
        progress = true;
      } else if (r.size() == 2) {
        // g = h^{-1}
        int g = r[0], h = r[1];
        if (std::abs(g) != std::abs(h)) {
          subst[g] = {-h};
          subst[-g] = {h};
          r.clear();
          progress = true;
        }
      }
    }
    bool all_dead = true;
    for (int g = 1; g < gid; ++g) {
      if (killed[g]) continue;
      if (subst.count(g) || subst.count(-g)) continue;
      all_dead = false;
      break;
    }
    if (all_dead) return Pi1::Trivial;
    if (!progress) break;
  }
  return Pi1::Inconclusive;
}

std::string SphericityReport::verdict() const {
  if (!homology_spherical() || !dimension_matches) return "not-spherical";
  if (expected_dim >= 2) {
    if (pi1 == Pi1::Trivial) return "spherical (pi1 verified)";
    return "homology-spherical";
  }
  return "homology-spherical";
}

SphericityReport sphericity_report(const FlagComplex& c, int expected_dim) {
  SphericityReport r;
  r.expected_dim = expected_dim;
  r.hom = homology(c);
  r.dim = r.hom.dim;
  r.dimension_matches = r.dim == expected_dim;
  r.vanishing_below = true;
  r.vanishing_off_top = true;
  for (int d = -1; d <= r.hom.dim + 1; ++d) {
    bool zero = r.hom.betti(d) == 0 && r.hom.torsion_at(d).empty();
    if (d < expected_dim && !zero) r.vanishing_below = false;
    if (d != expected_dim && !zero) r.vanishing_off_top = false;
  }
  r.top_torsion_free = r.hom.torsion_at(expected_dim).empty();
  if (expected_dim >= 2 && c.vertex_count() > 0 && c.vertex_count() <= 400)
    r.pi1 = pi1_trivial(c);
  return r;
}

stars::DirSet VDecomposition::dirs_of(std::uint32_t block_mask) const {
  stars::DirSet s = 0;
  for (int b = 0; b < block_count(); ++b)
    if ((block_mask >> b) & 1u) s |= blocks[b];
  return s;
}

bool VDecomposition::valid_structure() const {
  if (m < 1 || static_cast<int>(blocks.size()) != block_count()) return false;
  stars::DirSet seen = 0;
  for (stars::DirSet b : blocks) {
    if (b == 0 || (seen & b)) return false;
    seen |= b;
  }
  if (seen != stars::DirectionSet{rank}.all()) return false;
  for (int i = 0; i < m; ++i) {
    if (!dir_in(blocks[2 * i], 2 * i)) return false;
    if (!dir_in(blocks[2 * i + 1], 2 * i + 1)) return false;
  }
  return true;
}

VDecomposition pair_block_decomposition(int m, int k) {
  VDecomposition v;
  v.rank = m + k;
  v.m = m;
  v.k = k;
  for (int i = 0; i < m; ++i) {
    v.blocks.push_back(dirbit(2 * i));
    v.blocks.push_back(dirbit(2 * i + 1));
  }
  for (int j = 0; j < k; ++j)
    v.blocks.push_back(dirbit(2 * (m + j)) | dirbit(2 * (m + j) + 1));
  return v;
}

std::vector<std::uint32_t> enumerate_v_ideal_edges(const VDecomposition& v) {
  int nb = v.block_count();
  std::vector<std::uint32_t> out;
  std::uint32_t full = (std::uint32_t{1} << nb) - 1;
  for (std::uint32_t side = 1; side <= full; side += 2) {  // canonical: block 0 inside
    int s = __builtin_popcount(side);
    if (s < 2 || nb - s < 2) continue;
    bool separates = false;
    for (int i = 0; i < v.m && !separates; ++i)
      separates = ((side >> (2 * i)) & 1u) != ((side >> (2 * i + 1)) & 1u);
    if (separates) out.push_back(side);
  }
  std::sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return out;
}

namespace {

bool blocks_compatible(int nb, std::uint32_t a, std::uint32_t b) {
  std::uint32_t full = (std::uint32_t{1} << nb) - 1;
  std::uint32_t ac = full & ~a, bc = full & ~b;
  return (a & b) == 0 || (a & bc) == 0 || (ac & b) == 0 || (ac & bc) == 0;
}

}  // namespace

bool v_edge_descending(const VDecomposition& v, const stars::DotSource& src,
                       std::uint32_t block_mask) {
  auto alpha = stars::make_ideal_edge(v.rank, v.dirs_of(block_mask));
  return !stars::is_ascending_edge(src, alpha);
}

FlagComplex build_Z(const VDecomposition& v, const stars::DotSource& src) {
  auto candidates = enumerate_v_ideal_edges(v);
  std::vector<std::uint32_t> ascending;
  std::vector<std::string> labels;
  for (std::uint32_t side : candidates) {
    auto alpha = stars::make_ideal_edge(v.rank, v.dirs_of(side));
    if (stars::is_ascending_edge(src, alpha)) {
      ascending.push_back(side);
      labels.push_back(alpha.str());
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (size_t a = 0; a < ascending.size(); ++a)
    for (size_t b = a + 1; b < ascending.size(); ++b)
      if (blocks_compatible(v.block_count(), ascending[a], ascending[b]))
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return make_flag_complex(std::move(labels), edges);
}

FlagComplex build_Z_rose(const stars::DotSource& src) {
  auto all = stars::enumerate_ideal_edges(src.rank());
  std::vector<stars::IdealEdge> ascending;
  std::vector<std::string> labels;
  for (const auto& alpha : all)
    if (stars::is_ascending_edge(src, alpha)) {
      ascending.push_back(alpha);
      labels.push_back(alpha.str());
    }
  std::vector<std::pair<int, int>> edges;
  for (size_t a = 0; a < ascending.size(); ++a)
    for (size_t b = a + 1; b < ascending.size(); ++b)
      if (stars::compatible(ascending[a], ascending[b]))
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return make_flag_complex(std::move(labels), edges);
}

FlagComplex join(const FlagComplex& a, const FlagComplex& b) {
  FlagComplex c;
  c.labels = a.labels;
  for (const auto& l : b.labels) c.labels.push_back("J:" + l);
  int na = a.vertex_count(), nb = b.vertex_count();
  c.adj.assign(na + nb, std::vector<char>(na + nb, 0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) c.adj[i][j] = a.adj[i][j];
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) c.adj[na + i][na + j] = b.adj[i][j];
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) c.adj[i][na + j] = c.adj[na + j][i] = 1;
  return c;
}

}  // namespace jewelbox::complexes
