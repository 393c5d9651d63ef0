#include "jewelbox/morse.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace jewelbox::morse {

using freegroup::CyclicWord;
using freegroup::Letter;
using freegroup::Marking;
using freegroup::Word;
using graphs::EdgeMask;
using stars::Dir;
using stars::DirectionSet;
using stars::DirSet;
using stars::IdealEdge;

MarkedRose MarkedRose::make(const Marking& g) {
  if (!freegroup::is_automorphism(g)) throw error("marking is not a verified automorphism");
  return MarkedRose{g.rank, g};
}

bool IdealTree::pairwise_compatible() const {
  for (size_t i = 0; i < edges.size(); ++i)
    for (size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i] == edges[j]) return false;
      if (!stars::compatible(edges[i], edges[j])) return false;
    }
  return true;
}

std::string IdealTree::str() const {
  std::string s = "{";
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) s += " ";
    s += edges[i].str();
  }
  return s + "}";
}

long long mu_norm(const MarkedRose& rho, const CyclicWord& w) {
  Word img = rho.marking.apply(Word{rho.rank, w.letters});
  return freegroup::cyclic_canonical(img).length();
}

long long mu_zero(const MarkedRose& rho) {
  long long total = 0;
  for (const auto& w : freegroup::generate_W0(rho.rank)) total += mu_norm(rho, w);
  return total;
}

MuOrder mu_compare(const MarkedRose& r1, const MarkedRose& r2, int budget) {
  long long a = mu_zero(r1), b = mu_zero(r2);
  if (a != b) return a < b ? MuOrder::Less : MuOrder::Greater;
  for (int len = 1; len <= budget; ++len) {
    for (const auto& w : freegroup::enumerate_classes_of_length(r1.rank, len)) {
      long long x = mu_norm(r1, w), y = mu_norm(r2, w);
      if (x != y) return x < y ? MuOrder::Less : MuOrder::Greater;
    }
  }
  return MuOrder::TieAtBudget;
}

int default_budget(const MarkedRose& rho) {
  int longest = 1;
  for (const auto& w : rho.marking.images) longest = std::max(longest, w.length());
  return 4 * longest;
}

namespace {

// Laminar family underlying a blowup: for each ideal edge pick the side
// avoiding the base direction; compatibility then makes the chosen sides
// nested or disjoint.
struct Laminar {
  int rank = 0;
  Dir base = 0;
  std::vector<DirSet> sides;    // one per ideal edge, in tree order
  std::vector<int> parent;      // region index of the enclosing side, -1 = root
  std::vector<int> attach;      // attach[d] = region of direction d (0 = root)
  // Region v = 0 is the root; region j+1 corresponds to sides[j].
};

Laminar laminar_family(const MarkedRose& rho, const IdealTree& tree) {
  Laminar lam;
  lam.rank = rho.rank;
  lam.base = 2 * rho.rank - 1;  // reverse of the last petal
  DirectionSet e{rho.rank};
  for (const auto& a : tree.edges) {
    DirSet s = a.side;
    if (stars::dir_in(s, lam.base)) s = e.all() & ~s;
    lam.sides.push_back(s);
  }
  size_t n = lam.sides.size();
  lam.parent.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    int best = -1;
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if ((lam.sides[i] & ~lam.sides[j]) != 0) continue;  // need sides[i] inside sides[j]
      if (best < 0 || (lam.sides[j] & ~lam.sides[best]) == 0) best = static_cast<int>(j);
    }
    lam.parent[i] = best;
  }
  lam.attach.assign(2 * rho.rank, 0);
  for (Dir d = 0; d < 2 * rho.rank; ++d) {
    int best = -1;
    for (size_t j = 0; j < n; ++j) {
      if (!stars::dir_in(lam.sides[j], d)) continue;
      if (best < 0 || (lam.sides[j] & ~lam.sides[best]) == 0) best = static_cast<int>(j);
    }
    lam.attach[d] = best + 1;  // 0 is the root region
  }
  return lam;
}

// Path through the new-edge tree from region a to region b, as signed
// new-edge letters (+ means parent-to-child).
std::vector<int> tree_path(const std::vector<int>& region_parent,
                           const std::vector<int>& depth, int rank, int a, int b) {
  std::vector<int> up, down;
  int x = a, y = b;
  while (depth[x] > depth[y]) {
    // new edge x-1 connects parent(x) to x; moving child-to-parent is negative
    up.push_back(-(rank + (x - 1) + 1));
    x = region_parent[x];
  }
  while (depth[y] > depth[x]) {
    down.push_back(rank + (y - 1) + 1);
    y = region_parent[y];
  }
  while (x != y) {
    up.push_back(-(rank + (x - 1) + 1));
    x = region_parent[x];
    down.push_back(rank + (y - 1) + 1);
    y = region_parent[y];
  }
  std::reverse(down.begin(), down.end());
  up.insert(up.end(), down.begin(), down.end());
  return up;
}

}  // namespace

BlownUpGraph blowup(const MarkedRose& rho, const IdealTree& tree) {
  if (!tree.pairwise_compatible()) throw incompatible("ideal edges are not pairwise compatible");
  Laminar lam = laminar_family(rho, tree);
  size_t k = lam.sides.size();

  // Regions: 0 = root, j+1 = inside of sides[j].
  std::vector<int> region_parent(k + 1, -1);
  for (size_t j = 0; j < k; ++j) region_parent[j + 1] = lam.parent[j] + 1;
  std::vector<int> depth(k + 1, 0);
  for (size_t v = 1; v <= k; ++v) {
    int d = 0, x = static_cast<int>(v);
    while (region_parent[x] != -1) {
      x = region_parent[x];
      ++d;
    }
    depth[v] = d;
  }

  BlownUpGraph out;
  out.rank = rho.rank;
  out.base_vertex = 0;
  out.graph.vertices = static_cast<int>(k + 1);
  // Old petals first: petal i runs from attach(reverse) to attach(forward).
  for (int i = 0; i < rho.rank; ++i)
    out.graph.edges.emplace_back(lam.attach[2 * i + 1], lam.attach[2 * i]);
  // New tree edges: parent -> child region.
  for (size_t j = 0; j < k; ++j) {
    out.graph.edges.emplace_back(region_parent[j + 1], static_cast<int>(j + 1));
    out.new_edges |= graphs::bit(rho.rank + static_cast<int>(j));
  }

  // Lift each generator image to a closed edge path at the root.
  for (const Word& img : rho.marking.images) {
    std::vector<int> path;
    int at = 0;  // current region
    for (Letter l : img.letters) {
      Dir d = stars::dir_of_letter(l);
      int start = lam.attach[stars::involute(d)];
      int end = lam.attach[d];
      auto hop = tree_path(region_parent, depth, rho.rank, at, start);
      path.insert(path.end(), hop.begin(), hop.end());
      // Traverse the petal edge d/2, signed by orientation.
      path.push_back(l > 0 ? (d / 2 + 1) : -(d / 2 + 1));
      at = end;
    }
    auto back = tree_path(region_parent, depth, rho.rank, at, 0);
    path.insert(path.end(), back.begin(), back.end());
    out.images.push_back(std::move(path));
  }
  return out;
}

MarkedRose neighbor_rose(const MarkedRose& rho, const IdealTree& tree, EdgeMask t_old) {
  BlownUpGraph bg = blowup(rho, tree);
  if ((t_old & bg.new_edges) != 0)
    throw contains_blown_edge("collapse tree must avoid the blown-up edges");
  const graphs::Graph& g = bg.graph;
  if (graphs::popcount(t_old) != g.vertices - 1 ||
      static_cast<int>(graphs::subgraph_vertices(g, t_old).size()) !=
          (g.vertices > 1 ? g.vertices : 0) ||
      (g.vertices > 1 && graphs::subgraph_components(g, t_old) != 1))
    throw not_maximal_tree("collapse set is not a maximal tree of the blowup");

  // Petal letters of the new rose: old non-collapsed edges first, then the
  // blown-up edges, each in index order.
  std::vector<int> letter_of_edge(g.edge_count(), 0);
  int next = 1;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!graphs::contains(t_old, e) && !graphs::contains(bg.new_edges, e))
      letter_of_edge[e] = next++;
  for (int e = 0; e < g.edge_count(); ++e)
    if (graphs::contains(bg.new_edges, e)) letter_of_edge[e] = next++;

  Marking m;
  m.rank = rho.rank;
  for (const auto& path : bg.images) {
    std::vector<Letter> raw;
    for (int step : path) {
      int e = std::abs(step) - 1;
      if (graphs::contains(t_old, e)) continue;
      raw.push_back(step > 0 ? letter_of_edge[e] : -letter_of_edge[e]);
    }
    m.images.push_back(freegroup::reduce(raw, rho.rank));
  }
  if (!freegroup::is_automorphism(m))
    throw error("transported marking failed the automorphism check");
  return MarkedRose{rho.rank, m};
}

namespace {

std::string tuple_string(const std::vector<Word>& ws) {
  std::string s;
  for (const auto& w : ws) {
    s += w.str();
    s += '|';
  }
  return s;
}

long long tuple_len(const std::vector<Word>& ws) {
  long long t = 0;
  for (const auto& w : ws) t += w.length();
  return t;
}

std::vector<Word> conjugate_all(const std::vector<Word>& ws, Letter a) {
  std::vector<Word> out;
  for (const auto& w : ws) {
    std::vector<Letter> raw{-a};
    raw.insert(raw.end(), w.letters.begin(), w.letters.end());
    raw.push_back(a);
    out.push_back(freegroup::reduce(raw, ws.empty() ? 0 : w.rank));
  }
  return out;
}

// Total-length-minimal conjugate of the tuple, then the lexicographically
// least string over the plateau orbit.
std::string conjugation_canonical(std::vector<Word> ws, int rank) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (Letter a = -rank; a <= rank; ++a) {
      if (a == 0) continue;
      auto cand = conjugate_all(ws, a);
      if (tuple_len(cand) < tuple_len(ws)) {
        ws = std::move(cand);
        improved = true;
        break;
      }
    }
  }
  long long len = tuple_len(ws);
  std::set<std::string> seen{tuple_string(ws)};
  std::queue<std::vector<Word>> frontier;
  frontier.push(ws);
  std::string best = tuple_string(ws);
  int guard = 0;
  while (!frontier.empty() && guard++ < 5000) {
    auto t = frontier.front();
    frontier.pop();
    for (Letter a = -rank; a <= rank; ++a) {
      if (a == 0) continue;
      auto cand = conjugate_all(t, a);
      if (tuple_len(cand) != len) continue;
      auto key = tuple_string(cand);
      if (seen.insert(key).second) {
        best = std::min(best, key);
        frontier.push(std::move(cand));
      }
    }
  }
  return best;
}

}  // namespace

std::string canonical_marking_key(const MarkedRose& rho) {
  int n = rho.rank;
  // Relabelings of the target petals: permutation + inversion per petal.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::string best;
  do {
    for (int signs = 0; signs < (1 << n); ++signs) {
      std::vector<Word> ws;
      for (const Word& w : rho.marking.images) {
        std::vector<Letter> raw;
        for (Letter l : w.letters) {
          int i = std::abs(l) - 1;
          Letter mapped = perm[i] * ((signs >> i) & 1 ? -1 : 1);
          raw.push_back(l > 0 ? mapped : -mapped);
        }
        ws.push_back(freegroup::reduce(raw, n));
      }
      std::string key = conjugation_canonical(std::move(ws), n);
      if (best.empty() || key < best) best = key;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool equivalent(const MarkedRose& a, const MarkedRose& b) {
  if (a.rank != b.rank) return false;
  return canonical_marking_key(a) == canonical_marking_key(b);
}

AscendingLink ascending_link(const MarkedRose& rho, int budget) {
  int n = rho.rank;
  if (n > 3) throw too_large("ascending links are enumerated for rank <= 3 only");
  auto ideal = stars::enumerate_ideal_edges(n);

  // All nonempty ideal trees (cliques in the compatibility graph).
  std::vector<IdealTree> trees;
  std::vector<int> pick;
  auto rec = [&](auto&& self, size_t from) -> void {
    for (size_t i = from; i < ideal.size(); ++i) {
      bool ok = true;
      for (int p : pick)
        if (!stars::compatible(ideal[p], ideal[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(static_cast<int>(i));
      IdealTree t;
      for (int p : pick) t.edges.push_back(ideal[p]);
      trees.push_back(t);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  AscendingLink link;
  for (const auto& tree : trees) {
    BlownUpGraph bg = blowup(rho, tree);
    EdgeMask old_mask = bg.graph.full_mask() & ~bg.new_edges;
    for (EdgeMask t : graphs::spanning_trees(bg.graph)) {
      if ((t & ~old_mask) != 0) continue;
      MarkedRose nb = neighbor_rose(rho, tree, t);
      switch (mu_compare(nb, rho, budget)) {
        case MuOrder::Greater:
          link.vertices.push_back({tree, t, nb});
          break;
        case MuOrder::Less:
          break;
        case MuOrder::TieAtBudget:
          // The one legitimate tie is the base rose itself in disguise.
          if (equivalent(nb, rho)) {
            ++link.skipped_equivalent_to_base;
            break;
          }
          throw tie_at_budget("mu tie at budget " + std::to_string(budget) + " against " +
                              nb.marking.str());
      }
    }
  }

  // Roses are adjacent exactly when the union of their ideal trees is again
  // an ideal tree.
  std::vector<std::string> labels;
  for (const auto& v : link.vertices)
    labels.push_back(v.tree.str() + "/T=" + graphs::mask_str(v.collapse_tree, n));
  std::vector<std::pair<int, int>> edges;
  for (size_t a = 0; a < link.vertices.size(); ++a)
    for (size_t b = a + 1; b < link.vertices.size(); ++b) {
      IdealTree u;
      u.edges = link.vertices[a].tree.edges;
      for (const auto& e : link.vertices[b].tree.edges) {
        if (std::find(u.edges.begin(), u.edges.end(), e) == u.edges.end()) u.edges.push_back(e);
      }
      if (u.pairwise_compatible()) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  link.complex = complexes::make_flag_complex(std::move(labels), edges);
  return link;
}

}  // namespace jewelbox::morse
