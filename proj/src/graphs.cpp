#include "jewelbox/graphs.hpp"

#include <algorithm>
#include <numeric>

namespace jewelbox::graphs {

bool subset_less(EdgeMask a, EdgeMask b) {
  if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
  return a < b;
}

int Graph::valence(int v) const {
  int d = 0;
  for (auto [a, b] : edges) {
    if (a == v) ++d;
    if (b == v) ++d;
  }
  return d;
}

int Graph::rank() const {
  return rank_h1(*this, full_mask());
}

Graph rose(int n) {
  Graph g;
  g.vertices = 1;
  for (int i = 0; i < n; ++i) g.edges.emplace_back(0, 0);
  return g;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> subgraph_vertices(const Graph& g, EdgeMask s) {
  std::vector<bool> in(g.vertices, false);
  for (int e = 0; e < g.edge_count(); ++e)
    if (contains(s, e)) in[g.edges[e].first] = in[g.edges[e].second] = true;
  std::vector<int> vs;
  for (int v = 0; v < g.vertices; ++v)
    if (in[v]) vs.push_back(v);
  return vs;
}

int subgraph_components(const Graph& g, EdgeMask s) {
  auto vs = subgraph_vertices(g, s);
  if (vs.empty()) return 0;
  UnionFind uf(g.vertices);
  for (int e = 0; e < g.edge_count(); ++e)
    if (contains(s, e)) uf.unite(g.edges[e].first, g.edges[e].second);
  std::vector<int> roots;
  for (int v : vs) roots.push_back(uf.find(v));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return static_cast<int>(roots.size());
}

int rank_h1(const Graph& g, EdgeMask s) {
  int e = popcount(s);
  int v = static_cast<int>(subgraph_vertices(g, s).size());
  return e - v + subgraph_components(g, s);
}

bool is_core(const Graph& g, EdgeMask s) {
  int base = subgraph_components(g, s);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!contains(s, e) || g.is_loop(e)) continue;
    // Remove the open edge: both endpoints stay in the vertex set.
    UnionFind uf(g.vertices);
    for (int f = 0; f < g.edge_count(); ++f)
      if (f != e && contains(s, f)) uf.unite(g.edges[f].first, g.edges[f].second);
    auto vs = subgraph_vertices(g, s);
    std::vector<int> roots;
    for (int v : vs) roots.push_back(uf.find(v));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (static_cast<int>(roots.size()) > base) return false;
  }
  return true;
}

EdgeMask core_of(const Graph& g, EdgeMask s) {
  // Deleting every currently-separating edge and repeating converges to the
  // maximal core: an edge of any core inside s lies on a cycle, so it is
  // never separating at any stage.
  EdgeMask cur = s;
  while (cur != 0) {
    EdgeMask next = cur;
    int comps = subgraph_components(g, cur);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!contains(cur, e) || g.is_loop(e)) continue;
      UnionFind uf(g.vertices);
      for (int f = 0; f < g.edge_count(); ++f)
        if (f != e && contains(cur, f)) uf.unite(g.edges[f].first, g.edges[f].second);
      auto vs = subgraph_vertices(g, cur);
      std::vector<int> roots;
      for (int v : vs) roots.push_back(uf.find(v));
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      if (static_cast<int>(roots.size()) > comps) next &= ~bit(e);
    }
    if (next == cur) return cur;
    cur = next;
  }
  return 0;
}

bool is_forest(const Graph& g, EdgeMask s) { return core_of(g, s) == 0; }

ValidationReport validate(const Graph& g) {
  ValidationReport r;
  r.connected = g.vertices > 0 && subgraph_components(g, g.full_mask()) == 1 &&
                static_cast<int>(subgraph_vertices(g, g.full_mask()).size()) == g.vertices;
  if (g.vertices == 1 && g.edge_count() == 0) r.connected = true;
  EdgeMask core = core_of(g, g.full_mask());
  for (int e = 0; e < g.edge_count(); ++e)
    if (!contains(core, e)) r.separating_edges.push_back(e);
  r.min_valence = g.vertices > 0 ? g.valence(0) : 0;
  for (int v = 0; v < g.vertices; ++v) r.min_valence = std::min(r.min_valence, g.valence(v));
  return r;
}

std::vector<EdgeMask> enumerate_cores(const Graph& g) {
  int m = g.edge_count();
  if (m > 20) throw too_large("enumerate_cores limited to 20 edges");
  std::vector<EdgeMask> out;
  for (EdgeMask s = 1; s <= g.full_mask(); ++s)
    if (is_core(g, s)) out.push_back(s);
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

std::vector<EdgeMask> spanning_trees(const Graph& g) {
  std::vector<EdgeMask> out;
  int m = g.edge_count();
  int need = g.vertices - 1;
  if (need == 0) return {0};
  std::vector<int> nonloop;
  for (int e = 0; e < m; ++e)
    if (!g.is_loop(e)) nonloop.push_back(e);
  std::vector<int> pick;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (static_cast<int>(pick.size()) == need) {
      EdgeMask s = 0;
      for (int e : pick) s |= bit(e);
      // A spanning tree: V-1 edges, touches every vertex, one component.
      if (static_cast<int>(subgraph_vertices(g, s).size()) == g.vertices &&
          subgraph_components(g, s) == 1)
        out.push_back(s);
      return;
    }
    for (size_t i = from; i < nonloop.size(); ++i) {
      pick.push_back(nonloop[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

EdgeMask ForestCollapse::push_forward(EdgeMask s) const {
  EdgeMask r = 0;
  for (int e = 0; e < source.edge_count(); ++e)
    if (contains(s, e) && relabel[e] >= 0) r |= bit(relabel[e]);
  return r;
}

EdgeMask ForestCollapse::pull_back(EdgeMask s_prime) const {
  EdgeMask r = 0;
  for (int e = 0; e < source.edge_count(); ++e)
    if (relabel[e] >= 0 && contains(s_prime, relabel[e])) r |= bit(e);
  return r;
}

ForestCollapse collapse(const Graph& g, EdgeMask phi) {
  if (core_of(g, phi) != 0) throw not_a_forest("collapse set contains a core");
  UnionFind uf(g.vertices);
  for (int e = 0; e < g.edge_count(); ++e)
    if (contains(phi, e)) uf.unite(g.edges[e].first, g.edges[e].second);

  ForestCollapse c;
  c.source = g;
  c.forest = phi;
  c.vertex_map.assign(g.vertices, -1);
  int next = 0;
  for (int v = 0; v < g.vertices; ++v) {
    int r = uf.find(v);
    if (c.vertex_map[r] < 0) c.vertex_map[r] = next++;
    c.vertex_map[v] = c.vertex_map[r];
  }
  c.target.vertices = next;
  c.relabel.assign(g.edge_count(), -1);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (contains(phi, e)) continue;
    c.relabel[e] = c.target.edge_count();
    c.target.edges.emplace_back(c.vertex_map[g.edges[e].first], c.vertex_map[g.edges[e].second]);
  }
  return c;
}

EdgeMask core_section(const ForestCollapse& c, EdgeMask a_prime) {
  if (!is_core(c.target, a_prime)) throw not_core("core_section needs a core subset of the target");
  EdgeMask a = core_of(c.source, c.pull_back(a_prime) | c.forest);
  return a;
}

std::string mask_str(EdgeMask s, int m) {
  std::string out = "{";
  bool first = true;
  for (int e = 0; e < m; ++e)
    if (contains(s, e)) {
      if (!first) out += ",";
      out += "e" + std::to_string(e);
      first = false;
    }
  return out + "}";
}

}  // namespace jewelbox::graphs
