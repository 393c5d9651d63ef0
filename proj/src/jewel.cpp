#include "jewelbox/jewel.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace jewelbox::jewel {

using graphs::bit;
using graphs::contains;
using graphs::popcount;

bool TruncationSchedule::valid() const {
  if (rank < 2 || static_cast<int>(c.size()) != rank + 1) return false;
  if (!(c.front() > 0) || !(c.back() <= Rat(1, 3))) return false;
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (!(c[i + 1] > 2 * c[i])) return false;
  return true;
}

TruncationSchedule make_schedule(int n) {
  TruncationSchedule s;
  s.rank = n;
  for (int r = 1; r <= n + 1; ++r) s.c.push_back(pow3(r - n - 2));
  return s;
}

namespace {

// Unique solution of a square rational system, or nullopt if singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b) {
  size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rat inv = a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] /= inv;
    b[col] /= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  return b;
}

int matrix_rank(std::vector<std::vector<Rat>> a) {
  if (a.empty()) return 0;
  size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[row][col];
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

int affine_dim(const std::vector<std::vector<Rat>>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<Rat>> diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> d(pts[i].size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  return matrix_rank(std::move(diffs));
}

bool coords_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Rat mask_sum(const std::vector<Rat>& x, EdgeMask s) {
  Rat t = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (contains(s, static_cast<int>(i))) t += x[i];
  return t;
}

}  // namespace

std::vector<int> JewelPolytope::active_constraints(const std::vector<Rat>& x) const {
  std::vector<int> act;
  for (size_t i = 0; i < constraints.size(); ++i)
    if (mask_sum(x, constraints[i].support) == constraints[i].rhs)
      act.push_back(static_cast<int>(i));
  return act;
}

bool JewelPolytope::satisfies(const std::vector<Rat>& x) const {
  Rat total = 0;
  for (const Rat& v : x) total += v;
  if (total != 1) return false;
  for (const auto& c : constraints)
    if (mask_sum(x, c.support) < c.rhs) return false;
  return true;
}

JewelPolytope h_representation(const Graph& g, const TruncationSchedule& sched) {
  JewelPolytope p;
  p.graph = g;
  p.schedule = sched;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!g.is_loop(e)) p.constraints.push_back({bit(e), Rat(0), false});
  for (EdgeMask core : graphs::enumerate_cores(g)) {
    if (core == g.full_mask()) continue;
    int r = graphs::rank_h1(g, core);
    p.constraints.push_back({core, sched.at(r), true});
  }
  return p;
}

std::vector<CombinatorialVertex> vertices_combinatorial(const Graph& g,
                                                        const TruncationSchedule& sched) {
  std::vector<CombinatorialVertex> out;
  int m1 = g.edge_count();
  JewelPolytope hrep = h_representation(g, sched);
  for (EdgeMask tree : graphs::spanning_trees(g)) {
    std::vector<int> rest;
    for (int e = 0; e < m1; ++e)
      if (!contains(tree, e)) rest.push_back(e);
    std::sort(rest.begin(), rest.end());
    std::vector<int> order = rest;
    do {
      CombinatorialVertex v;
      v.tree = tree;
      v.order = order;
      v.coords.assign(m1, Rat(0));
      // Tree singletons pin x_i = 0; each nested prefix core pins the next
      // petal coordinate; the last petal is fixed by the volume condition.
      EdgeMask prefix = tree;
      Rat used = 0;
      for (size_t i = 0; i + 1 < order.size(); ++i) {
        prefix |= bit(order[i]);
        EdgeMask core = graphs::core_of(g, prefix);
        int r = graphs::rank_h1(g, core);
        Rat rhs = sched.at(r);
        Rat others = 0;
        for (int e = 0; e < m1; ++e)
          if (contains(core, e) && e != order[i]) others += v.coords[e];
        v.coords[order[i]] = rhs - others;
        used += v.coords[order[i]];
      }
      v.coords[order.back()] = 1 - used;
      if (!hrep.satisfies(v.coords))
        throw infeasible_schedule("combinatorial vertex violates the H-representation");
      out.push_back(std::move(v));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

std::vector<std::vector<Rat>> vertices_oracle(const JewelPolytope& p, int jobs) {
  int k = static_cast<int>(p.constraints.size());
  int m = p.m();
  if (k > 32) throw too_large("vertex oracle limited to 32 constraints");

  std::vector<std::vector<int>> combos;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pick.size()) == m) {
      combos.push_back(pick);
      return;
    }
    for (int i = from; i < k; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  auto solve_combo = [&](const std::vector<int>& combo) -> std::optional<std::vector<Rat>> {
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (int ci : combo) {
      std::vector<Rat> row(m + 1, Rat(0));
      for (int e = 0; e <= m; ++e)
        if (contains(p.constraints[ci].support, e)) row[e] = 1;
      a.push_back(std::move(row));
      b.push_back(p.constraints[ci].rhs);
    }
    a.emplace_back(m + 1, Rat(1));
    b.emplace_back(1);
    auto x = solve_square(std::move(a), std::move(b));
    if (!x || !p.satisfies(*x)) return std::nullopt;
    return x;
  };

  std::vector<std::vector<Rat>> found;
  if (jobs <= 1) {
    for (const auto& combo : combos)
      if (auto x = solve_combo(combo)) found.push_back(std::move(*x));
  } else {
    size_t chunk = (combos.size() + jobs - 1) / jobs;
    std::vector<std::future<std::vector<std::vector<Rat>>>> futures;
    for (int j = 0; j < jobs; ++j) {
      size_t lo = j * chunk, hi = std::min(combos.size(), (j + 1) * chunk);
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        std::vector<std::vector<Rat>> part;
        for (size_t i = lo; i < hi; ++i)
          if (auto x = solve_combo(combos[i])) part.push_back(std::move(*x));
        return part;
      }));
    }
    for (auto& f : futures) {
      auto part = f.get();
      found.insert(found.end(), part.begin(), part.end());
    }
  }
  std::sort(found.begin(), found.end(), coords_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<EdgeMask> FaceChain::v_blocks(const Graph& g) const {
  EdgeMask forest = 0;
  for (int e : forest_singletons) forest |= bit(e);
  EdgeMask uk = forest;
  for (EdgeMask c : cores) uk |= c;
  std::vector<EdgeMask> blocks{static_cast<EdgeMask>(g.full_mask() & ~uk)};
  for (int j = static_cast<int>(cores.size()) - 1; j >= 0; --j) {
    EdgeMask below = forest;
    if (j > 0) below |= cores[j - 1];
    blocks.push_back(cores[j] & ~below);
  }
  return blocks;
}

std::vector<EdgeMask> FaceChain::a_chain(const Graph& g) const {
  std::vector<EdgeMask> a{g.full_mask()};
  for (int j = static_cast<int>(cores.size()) - 1; j >= 0; --j) a.push_back(cores[j]);
  return a;
}

std::vector<FaceChain> face_chains(const Graph& g, const TruncationSchedule& sched, int k) {
  (void)sched;  // chains are combinatorial; the schedule fixes only the rhs
  int m = g.edge_count() - 1;
  if (k < 0 || k > m) return {};
  std::vector<int> nonloop;
  for (int e = 0; e <= m; ++e)
    if (!g.is_loop(e)) nonloop.push_back(e);
  std::vector<EdgeMask> proper_cores;
  for (EdgeMask c : graphs::enumerate_cores(g))
    if (c != g.full_mask()) proper_cores.push_back(c);

  std::vector<FaceChain> out;
  // Choose the forest part F, then extend by nested cores.
  int nl = static_cast<int>(nonloop.size());
  for (EdgeMask fsel = 0; fsel < (EdgeMask{1} << nl); ++fsel) {
    if (popcount(fsel) > k) continue;
    EdgeMask forest = 0;
    std::vector<int> fs;
    for (int i = 0; i < nl; ++i)
      if (contains(fsel, i)) {
        forest |= bit(nonloop[i]);
        fs.push_back(nonloop[i]);
      }
    if (graphs::core_of(g, forest) != 0) continue;
    int r = k - popcount(fsel);

    std::vector<EdgeMask> chain;
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(chain.size()) == r) {
        EdgeMask uk = forest;
        if (!chain.empty()) uk |= chain.back();
        if (uk == g.full_mask()) return;
        FaceChain fc;
        fc.forest_singletons = fs;
        fc.cores = chain;
        out.push_back(std::move(fc));
        return;
      }
      for (EdgeMask c : proper_cores) {
        if (!chain.empty() && (c & ~chain.back()) == 0) continue;  // need strict growth
        if (!chain.empty() && (chain.back() & ~c) != 0) continue;  // need nesting
        if (graphs::core_of(g, forest | c) != c) continue;
        chain.push_back(c);
        self(self);
        chain.pop_back();
      }
    };
    rec(rec);
  }
  return out;
}

std::vector<int> face_vertices_of_chain(const JewelPolytope& p, const FaceChain& chain) {
  // Map chain constraints to constraint indices.
  std::vector<int> wanted;
  for (int e : chain.forest_singletons) {
    for (size_t i = 0; i < p.constraints.size(); ++i)
      if (!p.constraints[i].from_core && p.constraints[i].support == bit(e))
        wanted.push_back(static_cast<int>(i));
  }
  for (EdgeMask c : chain.cores) {
    for (size_t i = 0; i < p.constraints.size(); ++i)
      if (p.constraints[i].from_core && p.constraints[i].support == c)
        wanted.push_back(static_cast<int>(i));
  }
  std::vector<int> ids;
  for (size_t v = 0; v < p.vertices.size(); ++v) {
    bool all = true;
    for (int ci : wanted)
      if (mask_sum(p.vertices[v], p.constraints[ci].support) != p.constraints[ci].rhs) {
        all = false;
        break;
      }
    if (all) ids.push_back(static_cast<int>(v));
  }
  return ids;
}

void face_lattice(JewelPolytope& p) {
  int nv = static_cast<int>(p.vertices.size());
  std::vector<std::vector<int>> facet_sets;
  for (const auto& c : p.constraints) {
    std::vector<int> s;
    for (int v = 0; v < nv; ++v)
      if (mask_sum(p.vertices[v], c.support) == c.rhs) s.push_back(v);
    if (!s.empty()) facet_sets.push_back(std::move(s));
  }
  std::set<std::vector<int>> faces;
  std::vector<std::vector<int>> queue;
  std::vector<int> all(nv);
  for (int v = 0; v < nv; ++v) all[v] = v;
  faces.insert(all);
  queue.push_back(all);
  while (!queue.empty()) {
    auto f = queue.back();
    queue.pop_back();
    for (const auto& fs : facet_sets) {
      std::vector<int> inter;
      std::set_intersection(f.begin(), f.end(), fs.begin(), fs.end(), std::back_inserter(inter));
      if (inter.empty()) continue;
      if (faces.insert(inter).second) queue.push_back(inter);
    }
  }
  p.faces.clear();
  int m = p.m();
  p.f_vector.assign(m, 0);
  for (const auto& f : faces) {
    std::vector<std::vector<Rat>> pts;
    for (int v : f) pts.push_back(p.vertices[v]);
    Face face;
    face.vertex_ids = f;
    face.dim = affine_dim(pts);
    if (face.dim < m) p.f_vector[face.dim]++;
    p.faces.push_back(std::move(face));
  }
  std::sort(p.faces.begin(), p.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertex_ids < b.vertex_ids;
  });
}

JewelPolytope build(const Graph& g, const TruncationSchedule& sched, bool check_oracle,
                    int jobs) {
  JewelPolytope p = h_representation(g, sched);
  auto comb = vertices_combinatorial(g, sched);
  std::vector<std::pair<std::vector<Rat>, CombinatorialVertex>> paired;
  for (auto& cv : comb) paired.emplace_back(cv.coords, cv);
  std::sort(paired.begin(), paired.end(),
            [](const auto& a, const auto& b) { return coords_less(a.first, b.first); });
  for (size_t i = 0; i + 1 < paired.size(); ++i)
    if (paired[i].first == paired[i + 1].first)
      throw infeasible_schedule("duplicate combinatorial vertices");
  for (auto& [coords, cv] : paired) {
    p.vertices.push_back(coords);
    p.combinatorial.push_back(cv);
  }
  if (check_oracle) {
    auto oracle = vertices_oracle(p, jobs);
    if (oracle != p.vertices)
      throw infeasible_schedule("combinatorial and oracle vertex sets differ");
  }
  face_lattice(p);
  return p;
}

std::vector<int> face_of_collapse(const graphs::ForestCollapse& c, const JewelPolytope& p_big,
                                  const JewelPolytope& p_small) {
  if (p_big.schedule.rank != p_small.schedule.rank || p_big.schedule.c != p_small.schedule.c)
    throw mismatched_schedule("collapse embedding needs one rank-based schedule");
  int m1 = c.source.edge_count();
  std::vector<int> ids;
  for (const auto& v : p_small.vertices) {
    std::vector<Rat> padded(m1, Rat(0));
    for (int e = 0; e < m1; ++e)
      if (c.relabel[e] >= 0) padded[e] = v[c.relabel[e]];
    auto it = std::lower_bound(p_big.vertices.begin(), p_big.vertices.end(), padded, coords_less);
    if (it == p_big.vertices.end() || *it != padded)
      throw not_in_jewel("collapsed-jewel vertex is not a vertex of the big jewel");
    for (int e = 0; e < m1; ++e)
      if (contains(c.forest, e) && padded[e] != 0)
        throw not_in_jewel("embedded vertex leaves the collapse face");
    ids.push_back(static_cast<int>(it - p_big.vertices.begin()));
  }
  return ids;
}

}  // namespace jewelbox::jewel
