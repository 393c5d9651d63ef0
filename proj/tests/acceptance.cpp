// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its own wall-clock limit.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "jewelbox/bordmap.hpp"
#include "jewelbox/cli.hpp"
#include "jewelbox/complexes.hpp"
#include "jewelbox/corpus.hpp"
#include "jewelbox/jewel.hpp"
#include "jewelbox/morse.hpp"
#include "jewelbox/rng.hpp"
#include "jewelbox/stars.hpp"
#include "jewelbox/words.hpp"

using namespace jewelbox;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

freegroup::Marking random_marking(int rank, Rng& rng, int moves) {
  freegroup::Marking g = freegroup::Marking::identity(rank);
  for (int step = 0; step < moves; ++step) {
    int i = static_cast<int>(rng.below(rank));
    int j = static_cast<int>(rng.below(rank));
    if (i == j) continue;
    freegroup::Marking el = freegroup::Marking::identity(rank);
    freegroup::Word w{rank, {i + 1}};
    freegroup::Letter l = rng.coin() ? j + 1 : -(j + 1);
    el.images[i] = rng.coin() ? freegroup::concat(w, freegroup::Word{rank, {l}})
                              : freegroup::concat(freegroup::Word{rank, {l}}, w);
    g = el.compose(g);
  }
  return g;
}

// ---------------------------------------------------------------- criterion 1
Outcome permutohedron_counts() {
  std::ostringstream detail;
  for (int n = 2; n <= 5; ++n) {
    auto g = graphs::rose(n);
    auto sched = jewel::make_schedule(n);
    auto p = jewel::build(g, sched, /*check_oracle=*/true);  // throws on mismatch
    if (static_cast<long long>(p.vertices.size()) != factorial(n))
      return {false, "rose " + std::to_string(n) + " has " + std::to_string(p.vertices.size()) +
                         " vertices"};
    if (n == 3 && p.f_vector != std::vector<int>{6, 6})
      return {false, "rank-3 f-vector is not (6,6)"};
    detail << "n=" << n << ":" << p.vertices.size() << " ";
  }
  return {true, detail.str() + "(both paths agree)"};
}

// ---------------------------------------------------------------- criterion 2
Outcome doubled_bar_fixture() {
  auto g = corpus::two_loops_double_bar();
  using graphs::bit;
  std::set<graphs::EdgeMask> expected{bit(0),          bit(1),
                                      bit(2) | bit(3), bit(0) | bit(1),
                                      bit(1) | bit(2) | bit(3), bit(0) | bit(2) | bit(3)};
  std::set<graphs::EdgeMask> proper;
  for (auto c : graphs::enumerate_cores(g))
    if (c != g.full_mask()) proper.insert(c);
  if (proper != expected) return {false, "proper core list mismatch"};

  auto trees = graphs::spanning_trees(g);
  if (trees != std::vector<graphs::EdgeMask>{bit(2), bit(3)}) return {false, "trees mismatch"};

  auto p = jewel::build(g, jewel::make_schedule(3), true);
  if (p.vertices.size() != 12) return {false, "vertex count != 12"};
  for (int bar : {2, 3}) {
    std::vector<int> on_face;
    for (size_t v = 0; v < p.vertices.size(); ++v)
      if (p.vertices[v][bar] == 0) on_face.push_back(static_cast<int>(v));
    if (on_face.size() != 6) return {false, "rose face is not a hexagon"};
    // The face really is a hexagon: 6 lattice edges live inside it.
    int edges_in_face = 0;
    for (const auto& f : p.faces)
      if (f.dim == 1 && std::includes(on_face.begin(), on_face.end(), f.vertex_ids.begin(),
                                      f.vertex_ids.end()))
        ++edges_in_face;
    if (edges_in_face != 6) return {false, "rose face is not a hexagonal cycle"};
  }
  return {true, "6 cores, 2 trees, 12 vertices, hexagonal rose faces"};
}

// ---------------------------------------------------------------- criterion 3
Outcome face_chain_bijection() {
  std::ostringstream detail;
  for (const auto& [name, g] : corpus::standard_corpus()) {
    auto sched = jewel::make_schedule(g.rank());
    auto p = jewel::build(g, sched, false);
    int m = p.m();
    std::vector<int> by_codim(m + 1, 0);
    for (const auto& f : p.faces) by_codim[m - f.dim]++;
    for (int k = 0; k <= m; ++k) {
      auto chains = jewel::face_chains(g, sched, k);
      if (static_cast<int>(chains.size()) != by_codim[k])
        return {false, name + " codim " + std::to_string(k) + ": " +
                           std::to_string(chains.size()) + " chains vs " +
                           std::to_string(by_codim[k]) + " faces"};
    }
    for (const auto& v : p.vertices)
      if (static_cast<int>(p.active_constraints(v).size()) != m)
        return {false, name + ": vertex without exactly m active constraints"};
    detail << name << " ";
  }
  return {true, "chains == faces at every codimension: " + detail.str()};
}

// ---------------------------------------------------------------- criterion 4
Outcome key_lemma() {
  Rng rng(2024);
  const int kPartitions = 10000;

  // Exhaustive at rank 2 for one marking source and one synthetic source.
  auto id2 = stars::MarkingSource::make(freegroup::Marking::identity(2), 3);
  auto dd2 = stars::DotData::random(2, 6, rng);
  for (const stars::DotSource& src : {stars::DotSource(id2), stars::DotSource(dd2)}) {
    for (int assign = 0; assign < 256; ++assign) {
      stars::DirSet part[4] = {0, 0, 0, 0};
      for (int d = 0; d < 4; ++d) part[(assign >> (2 * d)) & 3] |= stars::dirbit(d);
      if (!stars::key_lemma_residual(src, part[0], part[1], part[2], part[3]).is_zero())
        return {false, "nonzero residual at rank 2"};
    }
  }

  // 10^4 random partitions per source at rank 3.
  std::vector<stars::MarkingSource> markings;
  for (int s = 0; s < 5; ++s)
    markings.push_back(stars::MarkingSource::make(random_marking(3, rng, 4), 3));
  std::vector<stars::DotData> synth;
  for (int s = 0; s < 20; ++s) synth.push_back(stars::DotData::random(3, 6, rng));

  std::vector<stars::DotSource> sources;
  for (const auto& m : markings) sources.emplace_back(m);
  for (const auto& d : synth) sources.emplace_back(d);
  for (const auto& src : sources) {
    for (int trial = 0; trial < kPartitions; ++trial) {
      stars::DirSet part[4] = {0, 0, 0, 0};
      for (int d = 0; d < 6; ++d) part[rng.below(4)] |= stars::dirbit(d);
      if (!stars::key_lemma_residual(src, part[0], part[1], part[2], part[3]).is_zero())
        return {false, "nonzero residual at rank 3"};
    }
  }
  return {true, "zero residual: 256 exhaustive (n=2) + 10^4 x 25 sources (n=3)"};
}

// ---------------------------------------------------------------- criterion 5
Outcome norm_injectivity() {
  int pairs = 0;
  for (int rank : {2, 3}) {
    std::vector<stars::NormObject> objs;
    for (int petal = 0; petal < rank; ++petal)
      objs.push_back({false, stars::dirbit(2 * petal)});
    for (const auto& a : stars::enumerate_ideal_edges(rank)) objs.push_back({true, a.side});
    for (size_t i = 0; i < objs.size(); ++i)
      for (size_t j = i + 1; j < objs.size(); ++j) {
        auto wit = stars::distinct_norms_witness(rank, objs[i], objs[j]);
        if (!wit || wit->value_a == wit->value_b)
          return {false, "unseparated pair " + objs[i].str(rank) + " / " + objs[j].str(rank)};
        ++pairs;
      }
  }
  return {true, std::to_string(pairs) + " pairs separated by witness words"};
}

// ---------------------------------------------------------------- criterion 6
Outcome zv_sphericity() {
  Rng rng(77);
  const std::vector<std::pair<int, int>> cases{{1, 2}, {1, 3}, {1, 4},
                                               {2, 0}, {2, 1}, {2, 2}};
  std::ostringstream detail;
  for (auto [m, k] : cases) {
    auto v = complexes::pair_block_decomposition(m, k);
    int pi1_trivial_count = 0, pi1_run = 0;
    const int synthetic_target = 40, marking_target = 12;
    int synth_done = 0, mark_done = 0;
    int guard = 0;
    while ((synth_done < synthetic_target || mark_done < marking_target) && guard++ < 4000) {
      bool use_marking = synth_done >= synthetic_target ||
                         (mark_done < marking_target && rng.below(5) == 0);
      try {
        std::optional<stars::DotData> dd;
        std::optional<stars::MarkingSource> ms;
        if (use_marking)
          ms = stars::MarkingSource::make(random_marking(v.rank, rng, 3), 4);
        else
          dd = stars::DotData::random(v.rank, 6, rng);
        stars::DotSource src = use_marking ? stars::DotSource(*ms) : stars::DotSource(*dd);

        // The designated petal norms must order strictly with e_1 on top.
        bool ordered = true;
        for (int i = 1; i < m; ++i)
          if (stars::compare(src.norm(stars::dirbit(0)), src.norm(stars::dirbit(2 * i))) !=
              stars::Cmp::Greater)
            ordered = false;
        if (!ordered) continue;

        auto z = complexes::build_Z(v, src);
        auto rep = complexes::sphericity_report(z, 2 * m + k - 4);
        if (!rep.dimension_matches)
          return {false, "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                             ": dimension " + std::to_string(rep.dim)};
        if (!rep.homology_spherical())
          return {false, "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                             ": homology not spherical"};
        if (rep.pi1 != complexes::Pi1::NotRun) {
          ++pi1_run;
          if (rep.pi1 == complexes::Pi1::Trivial) ++pi1_trivial_count;
        }
        if (m == 1) {
          bool any_desc = false;
          for (auto side : complexes::enumerate_v_ideal_edges(v))
            if (complexes::v_edge_descending(v, src, side)) any_desc = true;
          bool full_sphere = rep.hom.betti(k - 2) > 0;
          if (full_sphere == any_desc)
            return {false, "m=1 k=" + std::to_string(k) + ": dichotomy mismatch"};
          if (any_desc && !rep.hom.acyclic())
            return {false, "m=1 k=" + std::to_string(k) + ": descending case not contractible"};
        }
        (use_marking ? mark_done : synth_done)++;
      } catch (const insufficient_words&) {
        continue;  // the truncated source could not decide ascent; resample
      }
    }
    int done = synth_done + mark_done;
    if (done < 50)
      return {false, "m=" + std::to_string(m) + " k=" + std::to_string(k) + ": only " +
                         std::to_string(done) + " sources"};
    detail << "(" << m << "," << k << "):" << done;
    if (pi1_run > 0) detail << "[pi1 " << pi1_trivial_count << "/" << pi1_run << "]";
    detail << " ";
  }
  return {true, detail.str()};
}

// ---------------------------------------------------------------- criterion 7
Outcome ascending_link_equivalence() {
  Rng rng(99);
  std::ostringstream detail;

  auto check_one = [&](const morse::MarkedRose& rho, int budget) -> std::string {
    morse::AscendingLink link;
    try {
      link = morse::ascending_link(rho, budget);
    } catch (const tie_at_budget& e) {
      return std::string("tie at budget: ") + e.what();
    }
    stars::MarkingSource ms = stars::MarkingSource::make(rho.marking, budget);
    stars::DotSource src(ms);
    complexes::FlagComplex z;
    try {
      z = complexes::build_Z_rose(src);
    } catch (const insufficient_words& e) {
      return std::string("insufficient words: ") + e.what();
    }
    auto h_link = complexes::homology_collapsed(link.complex);
    auto h_z = complexes::homology(z);
    int top = std::max(h_link.dim, h_z.dim) + 1;
    for (int d = -1; d <= top; ++d) {
      if (h_link.betti(d) != h_z.betti(d))
        return "homology mismatch in degree " + std::to_string(d);
      if (h_link.torsion_at(d) != h_z.torsion_at(d)) return "torsion mismatch";
    }
    int expected = 2 * rho.rank - 4;
    for (int d = -1; d <= top; ++d) {
      if (d == expected) continue;
      if (h_z.betti(d) != 0 || h_link.betti(d) != 0)
        return "reduced homology off degree " + std::to_string(expected);
    }
    if (z.dimension() != expected) return "Z(rho) dimension != " + std::to_string(expected);
    return "";
  };

  // Rank 2: every automorphism class with images of length <= 2.
  std::set<std::string> seen;
  std::vector<morse::MarkedRose> roses2;
  std::vector<freegroup::Word> shorts;
  for (int l1 : {1, -1, 2, -2}) {
    shorts.push_back(freegroup::Word{2, {l1}});
    for (int l2 : {1, -1, 2, -2})
      if (l2 != -l1) shorts.push_back(freegroup::Word{2, {l1, l2}});
  }
  for (const auto& w1 : shorts)
    for (const auto& w2 : shorts) {
      freegroup::Marking g{2, {w1, w2}};
      if (!freegroup::is_automorphism(g)) continue;
      auto rho = morse::MarkedRose::make(g);
      if (!seen.insert(morse::canonical_marking_key(rho)).second) continue;
      roses2.push_back(rho);
    }
  for (const auto& rho : roses2) {
    auto err = check_one(rho, std::max(8, morse::default_budget(rho)));
    if (!err.empty()) return {false, "rank 2 marking " + rho.marking.str() + ": " + err};
  }
  detail << roses2.size() << " rank-2 classes, ";

  // Rank 3: sampled markings.
  int done = 0, guard = 0;
  std::set<std::string> seen3;
  while (done < 10 && guard++ < 200) {
    auto g = random_marking(3, rng, 3);
    auto rho = morse::MarkedRose::make(g);
    if (!seen3.insert(morse::canonical_marking_key(rho)).second) continue;
    auto err = check_one(rho, 8);
    if (!err.empty()) return {false, "rank 3 marking " + g.str() + ": " + err};
    ++done;
  }
  if (done < 10) return {false, "only " + std::to_string(done) + " rank-3 markings sampled"};
  detail << done << " rank-3 markings";
  return {true, detail.str()};
}

// ---------------------------------------------------------------- criterion 8
Outcome bordmap_suite() {
  Rng rng(555);
  std::ostringstream detail;
  int collapses = 0, jacobians = 0;

  for (const auto& [name, g] : corpus::standard_corpus()) {
    auto sched = jewel::make_schedule(g.rank());
    auto p = jewel::build(g, sched, false);

    // (a) Nonvanishing at every vertex for every core subset.
    if (!bordmap::check_nonzero_at_vertices(p)) return {false, name + ": pi_A vanished"};

    // (b) Commuting squares, 10^3 samples per collapse, exact arithmetic.
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.is_loop(e)) continue;
      auto c = graphs::collapse(g, graphs::bit(e));
      if (!graphs::validate(c.target).valid_ambient()) continue;
      auto p_small = jewel::build(c.target, sched, false);
      auto rep = bordmap::check_commute(c, p, p_small, 1000, rng);
      if (!rep.pass || rep.max_discrepancy >= 1e-10)
        return {false, name + ": commuting square discrepancy " +
                           std::to_string(rep.max_discrepancy)};
      ++collapses;
    }

    // (c) Signatures constant per open face, distinct across faces.
    auto strata = bordmap::check_strata(p, 3, rng);
    if (!strata.pass) return {false, name + ": stratum signatures failed"};

    // (d) Jacobians at 100 interior samples per positive-dimensional face.
    for (int k = 0; k < p.m(); ++k) {
      for (const auto& chain : jewel::face_chains(g, sched, k)) {
        auto verts = jewel::face_vertices_of_chain(p, chain);
        int done = 0, attempts = 0;
        while (done < 100 && attempts++ < 140) {
          auto x = bordmap::sample_relint(p, verts, rng);
          try {
            auto rep = bordmap::jacobian_check(p, chain, x);
            if (!rep.pass)
              return {false, name + ": singular jacobian, min sv " +
                                 std::to_string(rep.min_singular)};
            ++done;
            ++jacobians;
          } catch (const degenerate_sample&) {
          }
        }
        if (done < 100) return {false, name + ": not enough interior samples"};
      }
    }
  }
  detail << collapses << " collapses x 1000 exact samples, " << jacobians << " jacobians";
  return {true, detail.str()};
}

// ---------------------------------------------------------------- criterion 9
Outcome reproducibility() {
  auto dir = fs::temp_directory_path() / "jewelbox_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto fixture = dir / "g.json";
  std::ofstream(fixture) << R"({"vertices": 2, "edges": [[0,0],[1,1],[0,1],[0,1]]})";

  auto run_all = [&](const std::string& tag) {
    auto out = dir / tag;
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    int rc = 0;
    rc |= cli::run({"graph", "--graph", fixture.string(), "--out", (out / "graph").string()});
    rc |= cli::run({"jewel", "build", "--graph", fixture.string(), "--out",
                    (out / "jewel").string()});
    rc |= cli::run({"complex", "zv", "--m", "1", "--k", "3", "--source", "dotdata", "--seed",
                    "42", "--out", (out / "zv").string()});
    rc |= cli::run({"complex", "zv", "--m", "2", "--k", "1", "--source", "marking", "--seed",
                    "43", "--out", (out / "zvm").string()});
    rc |= cli::run({"morse", "asclink", "--rank", "2", "--marking", R"(["a","b"])", "--budget",
                    "8", "--out", (out / "morse").string()});
    for (const char* what : {"nonzero", "commute", "jacobian", "strata"})
      rc |= cli::run({"bordmap", "check", "--graph", fixture.string(), "--what", what,
                      "--samples", "16", "--seed", "9", "--out", (out / "bm").string()});
    std::cout.rdbuf(old);
    return rc;
  };
  if (run_all("a") != 0) return {false, "first run failed"};
  if (run_all("b") != 0) return {false, "second run failed"};

  int files = 0;
  for (auto& entry : fs::recursive_directory_iterator(dir / "a")) {
    if (!entry.is_regular_file()) continue;
    auto rel = fs::relative(entry.path(), dir / "a");
    std::ifstream fa(entry.path(), std::ios::binary), fb(dir / "b" / rel, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str() || sa.str().empty())
      return {false, "artifact differs: " + rel.string()};
    ++files;
  }
  if (files < 10) return {false, "too few artifacts compared"};
  return {true, std::to_string(files) + " artifacts byte-identical across reruns"};
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"permutohedron vertex counts (n=2..5, both paths)", 10, permutohedron_counts},
      {"doubled-bar fixture (cores, trees, 12 vertices, hexagons)", 1, doubled_bar_fixture},
      {"face-chain/face-lattice bijection on the corpus", 300, face_chain_bijection},
      {"key lemma residual vanishes", 60, key_lemma},
      {"norm injectivity via witness words (n=2,3)", 120, norm_injectivity},
      {"Z(V) sphericity and the m=1 dichotomy", 600, zv_sphericity},
      {"ascending links match Z(rho) (n=2 classes, 10 n=3 markings)", 900,
       ascending_link_equivalence},
      {"bordification maps: nonzero/commute/strata/jacobian", 600, bordmap_suite},
      {"byte-identical reruns across the CLI surface", 300, reproducibility},
  };

  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < criteria[i].limit_seconds;
    bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("[%s] %zu. %s (%.2fs%s) %s\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), secs, in_time ? "" : " OVER LIMIT",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
