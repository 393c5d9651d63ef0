#include "jewelbox/bordmap.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>

namespace jewelbox::bordmap {

using graphs::bit;
using graphs::contains;

Rat SmoothingFamily::eval_exact(int r, const Rat& t) const {
  const Rat& lo = schedule.at(r);
  if (t < lo) throw out_of_domain("g_" + std::to_string(r) + " evaluated below c_r");
  if (t > 1) throw out_of_domain("g_" + std::to_string(r) + " evaluated above 1");
  const Rat& hi = schedule.at(r + 1);
  if (t >= hi) return Rat(1);
  Rat u = (t - lo) / (hi - lo);
  return u * u * (3 - 2 * u);
}

std::pair<double, double> SmoothingFamily::eval(int r, double t) const {
  double lo = to_double(schedule.at(r));
  double hi = to_double(schedule.at(r + 1));
  if (t < lo - 1e-15 || t > 1 + 1e-15) throw out_of_domain("g_r evaluated off [c_r, 1]");
  if (t >= hi) return {1.0, 0.0};
  if (t <= lo) return {0.0, 0.0};
  double u = (t - lo) / (hi - lo);
  double v = u * u * (3 - 2 * u);
  double dv = 6 * u * (1 - u) / (hi - lo);
  return {v, dv};
}

namespace {

template <typename T>
T mask_sum(const std::vector<T>& x, EdgeMask s) {
  T t{};
  for (size_t i = 0; i < x.size(); ++i)
    if (contains(s, static_cast<int>(i))) t += x[i];
  return t;
}

std::vector<EdgeMask> proper_cores(const JewelPolytope& p) {
  std::vector<EdgeMask> out;
  for (const auto& c : p.constraints)
    if (c.from_core) out.push_back(c.support);
  return out;
}

std::vector<EdgeMask> all_cores(const JewelPolytope& p) {
  auto out = proper_cores(p);
  out.push_back(p.graph.full_mask());
  return out;
}

}  // namespace

std::vector<Rat> pi_A_exact(const JewelPolytope& p, EdgeMask a, const std::vector<Rat>& x) {
  if (!p.satisfies(x)) throw not_in_jewel("pi_A argument violates the H-representation");
  SmoothingFamily fam{p.schedule};
  int m1 = p.graph.edge_count();
  std::vector<Rat> z(m1, Rat(0));
  for (int i = 0; i < m1; ++i) {
    if (!contains(a, i)) continue;
    Rat v = x[i];
    for (const auto& c : p.constraints) {
      if (!c.from_core) continue;
      EdgeMask s = c.support;
      if (!contains(s, i)) continue;
      if ((a & ~s) == 0) continue;  // S contains all of A
      int r = graphs::rank_h1(p.graph, s);
      v *= fam.eval_exact(r, mask_sum(x, s));
      if (v == 0) break;
    }
    z[i] = v;
  }
  return z;
}

std::vector<double> pi_A(const JewelPolytope& p, EdgeMask a, const std::vector<double>& x) {
  SmoothingFamily fam{p.schedule};
  int m1 = p.graph.edge_count();
  std::vector<double> z(m1, 0.0);
  for (int i = 0; i < m1; ++i) {
    if (!contains(a, i)) continue;
    double v = x[i];
    for (const auto& c : p.constraints) {
      if (!c.from_core) continue;
      EdgeMask s = c.support;
      if (!contains(s, i)) continue;
      if ((a & ~s) == 0) continue;
      int r = graphs::rank_h1(p.graph, s);
      v *= fam.eval(r, mask_sum(x, s)).first;
    }
    z[i] = v;
  }
  return z;
}

ProjectivePoint p_A(const JewelPolytope& p, EdgeMask a, const std::vector<Rat>& x) {
  auto z = pi_A_exact(p, a, x);
  Rat total = 0;
  for (const Rat& v : z) total += v;
  if (total == 0) throw error("pi_A vanished identically; nonvanishing violated");
  for (Rat& v : z) v /= total;
  return ProjectivePoint{a, std::move(z)};
}

std::map<EdgeMask, ProjectivePoint> p_C(const JewelPolytope& p, const std::vector<Rat>& x) {
  std::map<EdgeMask, ProjectivePoint> out;
  for (EdgeMask a : all_cores(p)) out.emplace(a, p_A(p, a, x));
  return out;
}

StratumSignature stratum_signature(const JewelPolytope& p, const std::vector<Rat>& x) {
  StratumSignature sig;
  for (EdgeMask a : all_cores(p)) {
    auto z = pi_A_exact(p, a, x);
    EdgeMask zeros = 0;
    for (int i = 0; i < p.graph.edge_count(); ++i)
      if (contains(a, i) && z[i] == 0) zeros |= bit(i);
    sig.zero_patterns.emplace_back(a, zeros);
  }
  std::sort(sig.zero_patterns.begin(), sig.zero_patterns.end());
  return sig;
}

std::vector<Rat> sample_relint(const JewelPolytope& p, const std::vector<int>& vertex_ids,
                               Rng& rng) {
  int m1 = p.graph.edge_count();
  std::vector<Rat> x(m1, Rat(0));
  Rat total = 0;
  for (int id : vertex_ids) {
    Rat w(rng.range(1, 97));
    for (int i = 0; i < m1; ++i) x[i] += w * p.vertices[id][i];
    total += w;
  }
  for (Rat& v : x) v /= total;
  return x;
}

CommuteReport check_commute(const graphs::ForestCollapse& c, const JewelPolytope& p_big,
                            const JewelPolytope& p_small, int samples, Rng& rng) {
  CommuteReport rep;
  rep.pass = true;
  std::vector<int> all_small(p_small.vertices.size());
  for (size_t i = 0; i < all_small.size(); ++i) all_small[i] = static_cast<int>(i);
  int m_big = c.source.edge_count();

  for (int s = 0; s < samples; ++s) {
    auto xs = sample_relint(p_small, all_small, rng);
    std::vector<Rat> xb(m_big, Rat(0));
    for (int e = 0; e < m_big; ++e)
      if (c.relabel[e] >= 0) xb[e] = xs[c.relabel[e]];
    for (EdgeMask a_prime : all_cores(p_small)) {
      EdgeMask a = graphs::core_of(c.source, c.pull_back(a_prime) | c.forest);
      auto big = p_A(p_big, a, xb);
      auto small = p_A(p_small, a_prime, xs);
      Rat disc = 0;
      for (int e = 0; e < m_big; ++e) {
        Rat bv = big.coords[e];
        Rat sv = c.relabel[e] >= 0 && contains(a_prime, c.relabel[e]) ? small.coords[c.relabel[e]]
                                                                      : Rat(0);
        Rat d = bv - sv;
        if (d < 0) d = -d;
        if (d > disc) disc = d;
      }
      rep.max_discrepancy = std::max(rep.max_discrepancy, to_double(disc));
      if (disc != 0) rep.pass = false;
      ++rep.cores_checked;
    }
    ++rep.samples;
  }
  return rep;
}

JacobianReport jacobian_check(const JewelPolytope& p, const FaceChain& chain,
                              const std::vector<Rat>& x) {
  auto blocks = chain.v_blocks(p.graph);
  auto a_chain = chain.a_chain(p.graph);
  int m1 = p.graph.edge_count();

  // Chart coordinates: per block, ratios against a reference index.
  struct Coord {
    int block;
    int index;
    int ref;
  };
  std::vector<Coord> coords;
  for (size_t l = 0; l < blocks.size(); ++l) {
    int ref = -1;
    for (int i = 0; i < m1; ++i)
      if (contains(blocks[l], i)) {
        ref = i;
        break;
      }
    if (ref < 0) throw degenerate_sample("empty stratification block");
    for (int i = ref + 1; i < m1; ++i)
      if (contains(blocks[l], i)) coords.push_back({static_cast<int>(l), i, ref});
  }
  JacobianReport rep;
  rep.chart_dim = static_cast<int>(coords.size());
  if (coords.empty()) {
    rep.pass = true;  // zero-dimensional chart: nothing to check
    return rep;
  }

  std::vector<double> base(m1);
  for (int i = 0; i < m1; ++i) base[i] = to_double(x[i]);

  double h = 1e-6;
  for (const auto& c : coords) {
    double lo = std::min(base[c.index], base[c.ref]);
    if (lo < 8 * h) throw degenerate_sample("sample too close to the face boundary");
  }
  // Inactive constraints need slack for the step to stay inside the jewel.
  for (const auto& c : p.constraints) {
    double slack = 0;
    for (int i = 0; i < m1; ++i)
      if (contains(c.support, i)) slack += base[i];
    slack -= to_double(c.rhs);
    if (slack > 1e-12 && slack < 8 * h)
      throw degenerate_sample("sample nearly activates an off-face constraint");
  }

  auto chart = [&](const std::vector<double>& pt) {
    Eigen::VectorXd out(coords.size());
    std::vector<std::vector<double>> zs;
    for (EdgeMask a : a_chain) zs.push_back(pi_A(p, a, pt));
    for (size_t q = 0; q < coords.size(); ++q) {
      const auto& c = coords[q];
      double num = zs[c.block][c.index];
      double den = zs[c.block][c.ref];
      out[q] = num / den;
    }
    return out;
  };

  Eigen::MatrixXd jac(coords.size(), coords.size());
  for (size_t q = 0; q < coords.size(); ++q) {
    const auto& c = coords[q];
    auto plus = base, minus = base;
    plus[c.index] += h;
    plus[c.ref] -= h;
    minus[c.index] -= h;
    minus[c.ref] += h;
    Eigen::VectorXd fp = chart(plus), fm = chart(minus);
    jac.col(q) = (fp - fm) / (2 * h);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  rep.min_singular = svd.singularValues().minCoeff();
  rep.max_singular = svd.singularValues().maxCoeff();
  rep.pass = rep.min_singular > 1e-8 * std::max(1.0, rep.max_singular);
  return rep;
}

StrataReport check_strata(const JewelPolytope& p, int samples_per_face, Rng& rng) {
  StrataReport rep;
  rep.constant_on_faces = true;
  rep.distinct_across_faces = true;
  rep.vertex_patterns_match_chains = true;

  std::set<StratumSignature> seen;
  std::vector<StratumSignature> per_face;
  int m = p.m();
  for (int k = 0; k <= m; ++k) {
    for (const auto& chain : jewel::face_chains(p.graph, p.schedule, k)) {
      auto verts = jewel::face_vertices_of_chain(p, chain);
      if (verts.empty()) continue;
      StratumSignature sig;
      for (int s = 0; s < std::max(1, samples_per_face); ++s) {
        auto x = sample_relint(p, verts, rng);
        auto si = stratum_signature(p, x);
        if (s == 0)
          sig = si;
        else if (!(si == sig))
          rep.constant_on_faces = false;
      }
      if (!seen.insert(sig).second) rep.distinct_across_faces = false;

      if (k == m) {
        // Vertex: predicted pattern from the chain blocks: p_{A_l} vanishes
        // off V_l.
        auto blocks = chain.v_blocks(p.graph);
        auto achain = chain.a_chain(p.graph);
        auto x = p.vertices[verts[0]];
        for (size_t l = 0; l < achain.size(); ++l) {
          auto z = pi_A_exact(p, achain[l], x);
          for (int i = 0; i < p.graph.edge_count(); ++i) {
            if (!contains(achain[l], i)) continue;
            bool nonzero = z[i] != 0;
            bool predicted = contains(blocks[l], i);
            if (nonzero != predicted) rep.vertex_patterns_match_chains = false;
          }
        }
      }
      ++rep.faces_checked;
    }
  }
  rep.pass =
      rep.constant_on_faces && rep.distinct_across_faces && rep.vertex_patterns_match_chains;
  return rep;
}

bool check_nonzero_at_vertices(const JewelPolytope& p) {
  for (const auto& v : p.vertices)
    for (EdgeMask a : all_cores(p)) {
      auto z = pi_A_exact(p, a, v);
      bool nonzero = false;
      for (const Rat& c : z)
        if (c != 0) nonzero = true;
      if (!nonzero) return false;
    }
  return true;
}

}  // namespace jewelbox::bordmap
