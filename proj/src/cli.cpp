#include "jewelbox/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "jewelbox/bordmap.hpp"
#include "jewelbox/complexes.hpp"
#include "jewelbox/corpus.hpp"
#include "jewelbox/jewel.hpp"
#include "jewelbox/morse.hpp"
#include "jewelbox/rng.hpp"
#include "jewelbox/stars.hpp"
#include "jewelbox/words.hpp"

namespace jewelbox::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool verbose() {
  const char* v = std::getenv("JEWELBOX_LOG");
  return v != nullptr && *v != '\0';
}

void log(const std::string& msg) {
  if (verbose()) std::cerr << "[jewelbox] " << msg << "\n";
}

graphs::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open graph file " + path);
  json j = json::parse(in);
  graphs::Graph g;
  g.vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges"))
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  if (g.edge_count() > 20) throw too_large("graphs are limited to 20 edges");
  for (auto [u, v] : g.edges)
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
      throw error("edge endpoint out of range");
  return g;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string complex_json(const complexes::FlagComplex& c, const json& header) {
  json j;
  j["header"] = header;
  j["vertices"] = c.labels;
  json edges = json::array();
  for (int a = 0; a < c.vertex_count(); ++a)
    for (int b = a + 1; b < c.vertex_count(); ++b)
      if (c.adjacent(a, b)) edges.push_back({a, b});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

std::string homology_csv(const complexes::HomologyReport& h, const json& header) {
  std::string out = "# " + header.dump() + "\n";
  out += "degree,betti,torsion\n";
  for (size_t i = 0; i < h.reduced_betti.size(); ++i) {
    int degree = static_cast<int>(i) - 1;
    std::string tors;
    for (const auto& t : h.torsion[i]) {
      if (!tors.empty()) tors += " ";
      tors += t.str();
    }
    out += std::to_string(degree) + "," + std::to_string(h.reduced_betti[i]) + "," + tors + "\n";
  }
  return out;
}

int cmd_graph(const std::string& graph_path, const std::string& out_dir) {
  graphs::Graph g = load_graph(graph_path);
  auto report = graphs::validate(g);
  int m = g.edge_count();

  std::string listing;
  listing += "valid," + std::string(report.valid_ambient() ? "yes" : "no") + "\n";
  listing += "connected," + std::string(report.connected ? "yes" : "no") + "\n";
  listing += "min_valence," + std::to_string(report.min_valence) + "\n";
  std::string seps;
  for (int e : report.separating_edges) seps += (seps.empty() ? "" : " ") + std::to_string(e);
  listing += "separating_edges," + seps + "\n";
  listing += "rank," + std::to_string(g.rank()) + "\n";

  std::cout << listing;
  if (!report.valid_ambient()) {
    std::cout << "invalid graph";
    if (!report.separating_edges.empty()) std::cout << ": separating edge";
    std::cout << "\n";
    return 1;
  }

  std::string cores = "core\n";
  for (auto c : graphs::enumerate_cores(g)) cores += graphs::mask_str(c, m) + "\n";
  std::string trees = "spanning_tree\n";
  for (auto t : graphs::spanning_trees(g)) trees += graphs::mask_str(t, m) + "\n";
  std::cout << cores << trees;
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "validation.csv", listing);
    write_file(fs::path(out_dir) / "cores.csv", cores);
    write_file(fs::path(out_dir) / "trees.csv", trees);
  }
  return 0;
}

int cmd_jewel(const std::string& graph_path, int codim, bool skip_oracle,
              const std::string& out_dir, int jobs) {
  graphs::Graph g = load_graph(graph_path);
  if (!graphs::validate(g).valid_ambient()) {
    std::cout << "invalid graph\n";
    return 1;
  }
  auto sched = jewel::make_schedule(g.rank());
  log("building jewel for a rank-" + std::to_string(g.rank()) + " graph with " +
      std::to_string(g.edge_count()) + " edges");
  jewel::JewelPolytope p;
  try {
    p = jewel::build(g, sched, !skip_oracle, jobs);
  } catch (const infeasible_schedule& e) {
    std::cout << "FAIL oracle: " << e.what() << "\n";
    return 1;
  }
  log("lattice has " + std::to_string(p.faces.size()) + " faces");
  int m = p.m();

  std::string hrep;
  for (const auto& c : p.constraints) {
    for (int e = 0; e <= m; ++e) hrep += (graphs::contains(c.support, e) ? "1 " : "0 ");
    hrep += ">= " + to_string(c.rhs) + "\n";
  }
  std::string vrep = "JOFF\n" + std::to_string(p.vertices.size()) + " " +
                     std::to_string(p.faces.size()) + " 0\n";
  for (const auto& v : p.vertices) {
    for (int e = 0; e <= m; ++e) vrep += to_string(v[e]) + (e == m ? "" : " ");
    vrep += "\n";
  }
  for (const auto& f : p.faces) {
    vrep += std::to_string(f.vertex_ids.size());
    for (int id : f.vertex_ids) vrep += " " + std::to_string(id);
    vrep += "\n";
  }
  std::string fvec = "dim,count\n";
  for (size_t d = 0; d < p.f_vector.size(); ++d)
    fvec += std::to_string(d) + "," + std::to_string(p.f_vector[d]) + "\n";

  std::string chains = "codim,forest,cores\n";
  int klo = codim >= 0 ? codim : 0;
  int khi = codim >= 0 ? codim : m;
  for (int k = klo; k <= khi; ++k)
    for (const auto& ch : jewel::face_chains(g, sched, k)) {
      std::string fstr;
      for (int e : ch.forest_singletons) fstr += (fstr.empty() ? "" : " ") + std::to_string(e);
      std::string cstr;
      for (auto c : ch.cores) cstr += (cstr.empty() ? "" : " ") + graphs::mask_str(c, m + 1);
      chains += std::to_string(k) + "," + fstr + "," + cstr + "\n";
    }

  std::cout << "vertices," << p.vertices.size() << "\n";
  std::cout << "f_vector";
  for (int c : p.f_vector) std::cout << "," << c;
  std::cout << "\n";
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "hrep.txt", hrep);
    write_file(fs::path(out_dir) / "vrep.joff", vrep);
    write_file(fs::path(out_dir) / "fvector.csv", fvec);
    write_file(fs::path(out_dir) / "chains.csv", chains);
  }
  return 0;
}

int cmd_complex_zv(int m, int k, const std::string& source, std::uint64_t seed,
                   const std::string& out_dir) {
  json header{{"m", m}, {"k", k}, {"source", source}, {"seed", seed}};
  auto v = complexes::pair_block_decomposition(m, k);
  Rng rng(seed);

  complexes::FlagComplex z;
  bool any_descending = false;
  if (source == "dotdata") {
    auto data = stars::DotData::random(v.rank, 8, rng);
    stars::DotSource src(data);
    z = complexes::build_Z(v, src);
    for (auto side : complexes::enumerate_v_ideal_edges(v))
      if (complexes::v_edge_descending(v, src, side)) any_descending = true;
  } else if (source == "marking") {
    // Random positive automorphism built from elementary Nielsen moves.
    freegroup::Marking g = freegroup::Marking::identity(v.rank);
    for (int step = 0; step < 6; ++step) {
      int i = static_cast<int>(rng.below(v.rank));
      int j = static_cast<int>(rng.below(v.rank));
      if (i == j) continue;
      freegroup::Marking el = freegroup::Marking::identity(v.rank);
      freegroup::Word w{v.rank, {i + 1}};
      w = freegroup::concat(w, freegroup::Word{v.rank, {rng.coin() ? j + 1 : -(j + 1)}});
      el.images[i] = w;
      g = el.compose(g);
    }
    auto ms = stars::MarkingSource::make(g, 4);
    stars::DotSource src(ms);
    z = complexes::build_Z(v, src);
    for (auto side : complexes::enumerate_v_ideal_edges(v))
      if (complexes::v_edge_descending(v, src, side)) any_descending = true;
  } else {
    throw error("unknown source " + source);
  }

  auto rep = complexes::sphericity_report(z, 2 * m + k - 4);
  json out = header;
  out["vertices"] = z.vertex_count();
  out["dimension"] = rep.dim;
  out["expected_dimension"] = rep.expected_dim;
  out["any_descending"] = any_descending;
  out["verdict"] = rep.verdict();
  std::cout << out.dump(2) << "\n";
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "complex.json", complex_json(z, header));
    write_file(fs::path(out_dir) / "homology.csv", homology_csv(rep.hom, header));
    write_file(fs::path(out_dir) / "report.json", out.dump(2) + "\n");
  }
  bool pass = rep.dimension_matches && rep.homology_spherical();
  if (m == 1) {
    // Full-sphere/contractible dichotomy.
    bool is_sphere = rep.hom.betti(k - 2) > 0;
    pass = pass && (is_sphere == !any_descending);
  }
  return pass ? 0 : 1;
}

int cmd_morse_asclink(int rank, const std::string& marking_json, int budget,
                      const std::string& out_dir) {
  json mj = json::parse(marking_json);
  freegroup::Marking g;
  g.rank = rank;
  for (const auto& s : mj) g.images.push_back(freegroup::parse_word(s.get<std::string>(), rank));
  auto rho = morse::MarkedRose::make(g);
  if (budget <= 0) budget = morse::default_budget(rho);
  json header{{"rank", rank}, {"marking", g.str()}, {"budget", budget}};

  morse::AscendingLink link;
  try {
    link = morse::ascending_link(rho, budget);
  } catch (const tie_at_budget& e) {
    std::cout << "FAIL tie-at-budget: " << e.what() << "\n";
    return 1;
  }
  log("ascending link has " + std::to_string(link.vertices.size()) + " roses");
  auto ms = stars::MarkingSource::make(g, budget);
  stars::DotSource src(ms);
  complexes::FlagComplex z;
  try {
    z = complexes::build_Z_rose(src);
  } catch (const insufficient_words& e) {
    std::cout << "FAIL insufficient words: " << e.what() << "\n";
    return 1;
  }

  auto h_link = complexes::homology_collapsed(link.complex);
  auto h_z = complexes::homology(z);
  bool same = true;
  size_t top = std::max(h_link.reduced_betti.size(), h_z.reduced_betti.size());
  for (size_t d = 0; d < top; ++d) {
    long long a = d < h_link.reduced_betti.size() ? h_link.reduced_betti[d] : 0;
    long long b = d < h_z.reduced_betti.size() ? h_z.reduced_betti[d] : 0;
    if (a != b) same = false;
  }

  json out = header;
  out["link_vertices"] = link.complex.vertex_count();
  out["z_vertices"] = z.vertex_count();
  out["homology_equal"] = same;
  std::cout << out.dump(2) << "\n";
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "asclink.json", complex_json(link.complex, header));
    write_file(fs::path(out_dir) / "asclink_homology.csv", homology_csv(h_link, header));
    write_file(fs::path(out_dir) / "z_rho.json", complex_json(z, header));
    write_file(fs::path(out_dir) / "z_homology.csv", homology_csv(h_z, header));
    write_file(fs::path(out_dir) / "report.json", out.dump(2) + "\n");
  }
  return same ? 0 : 1;
}

int cmd_bordmap(const std::string& graph_path, const std::string& what, int samples,
                std::uint64_t seed, const std::string& out_dir) {
  graphs::Graph g = load_graph(graph_path);
  if (!graphs::validate(g).valid_ambient()) {
    std::cout << "invalid graph\n";
    return 1;
  }
  auto sched = jewel::make_schedule(g.rank());
  auto p = jewel::build(g, sched);
  Rng rng(seed);
  json out{{"graph", graph_path}, {"what", what}, {"samples", samples}, {"seed", seed}};
  bool pass = false;

  if (what == "nonzero") {
    pass = bordmap::check_nonzero_at_vertices(p);
    out["nonzero_at_all_vertices"] = pass;
  } else if (what == "commute") {
    double worst = 0.0;
    pass = true;
    int count = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.is_loop(e)) continue;
      auto c = graphs::collapse(g, graphs::bit(e));
      if (!graphs::validate(c.target).valid_ambient()) continue;
      auto p_small = jewel::build(c.target, sched);
      auto rep = bordmap::check_commute(c, p, p_small, samples, rng);
      worst = std::max(worst, rep.max_discrepancy);
      pass = pass && rep.pass;
      ++count;
    }
    out["collapses"] = count;
    out["max_discrepancy"] = worst;
  } else if (what == "jacobian") {
    pass = true;
    double min_sv = -1;
    int checked = 0;
    for (int k = 0; k < p.m(); ++k) {
      for (const auto& chain : jewel::face_chains(g, sched, k)) {
        auto verts = jewel::face_vertices_of_chain(p, chain);
        for (int s = 0; s < samples; ++s) {
          auto x = bordmap::sample_relint(p, verts, rng);
          try {
            auto rep = bordmap::jacobian_check(p, chain, x);
            pass = pass && rep.pass;
            if (rep.chart_dim > 0 && (min_sv < 0 || rep.min_singular < min_sv))
              min_sv = rep.min_singular;
            ++checked;
          } catch (const degenerate_sample&) {
          }
        }
      }
    }
    out["checked"] = checked;
    out["min_singular_value"] = min_sv;
  } else if (what == "strata") {
    auto rep = bordmap::check_strata(p, std::max(2, samples), rng);
    pass = rep.pass;
    out["faces"] = rep.faces_checked;
    out["constant_on_faces"] = rep.constant_on_faces;
    out["distinct_across_faces"] = rep.distinct_across_faces;
    out["vertex_patterns_match"] = rep.vertex_patterns_match_chains;
  } else {
    throw error("unknown bordmap check " + what);
  }

  out["pass"] = pass;
  std::cout << out.dump(2) << "\n";
  if (!out_dir.empty()) write_file(fs::path(out_dir) / ("bordmap_" + what + ".json"),
                                   out.dump(2) + "\n");
  return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"jewel polytopes, norms, ascending links and bordification maps"};
  app.require_subcommand(1);

  std::string graph_path, out_dir, marking_json, source = "dotdata", what = "nonzero";
  int codim = -1, m = 1, k = 2, rank = 2, budget = 0, samples = 100, jobs = 1;
  std::uint64_t seed = 1;
  bool skip_oracle = false;

  auto* cg = app.add_subcommand("graph", "validate a graph and list cores/trees");
  cg->add_option("--graph", graph_path)->required();
  cg->add_option("--out", out_dir);

  auto* cj = app.add_subcommand("jewel", "jewel polytope pipelines");
  auto* cjb = cj->add_subcommand("build", "H-rep, V-rep, f-vector, chains");
  cjb->add_option("--graph", graph_path)->required();
  cjb->add_option("--codim", codim);
  cjb->add_flag("--skip-oracle", skip_oracle);
  cjb->add_option("--out", out_dir);
  cjb->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  auto* cc = app.add_subcommand("complex", "complexes of ideal edges");
  auto* ccz = cc->add_subcommand("zv", "ascending V-ideal-edge complex");
  ccz->add_option("--m", m)->required();
  ccz->add_option("--k", k)->required();
  ccz->add_option("--source", source);
  ccz->add_option("--seed", seed);
  ccz->add_option("--out", out_dir);

  auto* cm = app.add_subcommand("morse", "marked roses and ascending links");
  auto* cma = cm->add_subcommand("asclink", "ascending link vs Z(rho)");
  cma->add_option("--rank", rank)->required();
  cma->add_option("--marking", marking_json)->required();
  cma->add_option("--budget", budget);
  cma->add_option("--out", out_dir);

  auto* cb = app.add_subcommand("bordmap", "bordification map verification");
  auto* cbc = cb->add_subcommand("check", "run one bordmap suite");
  cbc->add_option("--graph", graph_path)->required();
  cbc->add_option("--what", what);
  cbc->add_option("--samples", samples);
  cbc->add_option("--seed", seed);
  cbc->add_option("--out", out_dir);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cg->parsed()) return cmd_graph(graph_path, out_dir);
    if (cjb->parsed()) return cmd_jewel(graph_path, codim, skip_oracle, out_dir, jobs);
    if (ccz->parsed()) return cmd_complex_zv(m, k, source, seed, out_dir);
    if (cma->parsed()) return cmd_morse_asclink(rank, marking_json, budget, out_dir);
    if (cbc->parsed()) return cmd_bordmap(graph_path, what, samples, seed, out_dir);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace jewelbox::cli
