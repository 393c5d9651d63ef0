#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jewelbox/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CaptureOut {
  std::ostringstream buffer;
  std::streambuf* old;
  CaptureOut() : old(std::cout.rdbuf(buffer.rdbuf())) {}
  ~CaptureOut() { std::cout.rdbuf(old); }
};

fs::path temp_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("jewelbox_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_graph(const fs::path& dir, const std::string& name, const std::string& body) {
  auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kDoubledBar = R"({"vertices": 2, "edges": [[0,0],[1,1],[0,1],[0,1]]})";
const char* kBarbell = R"({"vertices": 2, "edges": [[0,0],[1,1],[0,1]]})";
const char* kRose3 = R"({"vertices": 1, "edges": [[0,0],[0,0],[0,0]]})";

}  // namespace

TEST_CASE("graph command") {
  auto dir = temp_dir("graph");
  auto good = write_graph(dir, "g.json", kDoubledBar);
  auto bad = write_graph(dir, "bad.json", kBarbell);
  auto broken = write_graph(dir, "broken.json", "{not json");

  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"graph", "--graph", good.string()}) == 0);
    CHECK(cap.buffer.str().find("{e0}") != std::string::npos);
    CHECK(cap.buffer.str().find("{e2,e3}") != std::string::npos);
  }
  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"graph", "--graph", bad.string()}) == 1);
    CHECK(cap.buffer.str().find("separating") != std::string::npos);
  }
  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"graph", "--graph", broken.string()}) == 2);
  }
}

TEST_CASE("jewel build artifacts") {
  auto dir = temp_dir("jewel");
  auto rose = write_graph(dir, "rose3.json", kRose3);
  auto out = dir / "out";
  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"jewel", "build", "--graph", rose.string(), "--out",
                              out.string()}) == 0);
    CHECK(cap.buffer.str().find("vertices,6") != std::string::npos);
    CHECK(cap.buffer.str().find("f_vector,6,6") != std::string::npos);
  }
  CHECK(fs::exists(out / "hrep.txt"));
  CHECK(fs::exists(out / "vrep.joff"));
  CHECK(slurp(out / "fvector.csv") == "dim,count\n0,6\n1,6\n");
  // The doubled-bar fixture reports 12 vertices.
  auto fixture = write_graph(dir, "g.json", kDoubledBar);
  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"jewel", "build", "--graph", fixture.string()}) == 0);
    CHECK(cap.buffer.str().find("vertices,12") != std::string::npos);
  }
}

TEST_CASE("complex zv command") {
  auto dir = temp_dir("zv");
  auto out = dir / "out";
  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"complex", "zv", "--m", "1", "--k", "4", "--source", "dotdata",
                              "--seed", "7", "--out", out.string()}) == 0);
  }
  CHECK(fs::exists(out / "homology.csv"));
  CHECK(fs::exists(out / "complex.json"));
  auto report = slurp(out / "report.json");
  CHECK(report.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("morse asclink command") {
  auto dir = temp_dir("morse");
  auto out = dir / "out";
  CaptureOut cap;
  CHECK(jewelbox::cli::run({"morse", "asclink", "--rank", "2", "--marking", R"(["a","b"])",
                            "--budget", "8", "--out", out.string()}) == 0);
  CHECK(cap.buffer.str().find("\"homology_equal\": true") != std::string::npos);
  CHECK(fs::exists(out / "asclink.json"));
  CHECK(fs::exists(out / "z_homology.csv"));
}

TEST_CASE("bordmap check command") {
  auto dir = temp_dir("bordmap");
  auto theta = write_graph(dir, "theta.json",
                           R"({"vertices": 2, "edges": [[0,1],[0,1],[0,1]]})");
  for (const char* what : {"nonzero", "commute", "strata"}) {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"bordmap", "check", "--graph", theta.string(), "--what", what,
                              "--samples", "20", "--seed", "3"}) == 0);
    CHECK(cap.buffer.str().find("\"pass\": true") != std::string::npos);
  }
  {
    CaptureOut cap;
    CHECK(jewelbox::cli::run({"bordmap", "check", "--graph", theta.string(), "--what",
                              "jacobian", "--samples", "10", "--seed", "3"}) == 0);
  }
}

TEST_CASE("worker count does not change artifacts") {
  auto dir = temp_dir("jobs");
  auto rose4 = write_graph(dir, "rose4.json",
                           R"({"vertices": 1, "edges": [[0,0],[0,0],[0,0],[0,0]]})");
  CaptureOut cap;
  REQUIRE(jewelbox::cli::run({"jewel", "build", "--graph", rose4.string(), "--jobs", "1",
                              "--out", (dir / "j1").string()}) == 0);
  REQUIRE(jewelbox::cli::run({"jewel", "build", "--graph", rose4.string(), "--jobs", "3",
                              "--out", (dir / "j3").string()}) == 0);
  CHECK(slurp(dir / "j1" / "vrep.joff") == slurp(dir / "j3" / "vrep.joff"));
  CHECK(slurp(dir / "j1" / "hrep.txt") == slurp(dir / "j3" / "hrep.txt"));
}

TEST_CASE("byte-identical reruns with fixed seeds") {
  auto dir = temp_dir("repro");
  auto fixture = write_graph(dir, "g.json", kDoubledBar);
  auto run_into = [&](const std::string& tag) {
    auto out = dir / tag;
    {
      CaptureOut cap;
      REQUIRE(jewelbox::cli::run({"jewel", "build", "--graph", fixture.string(), "--out",
                                  (out / "jewel").string()}) == 0);
      REQUIRE(jewelbox::cli::run({"complex", "zv", "--m", "2", "--k", "1", "--source", "dotdata",
                                  "--seed", "11", "--out", (out / "zv").string()}) == 0);
      REQUIRE(jewelbox::cli::run({"bordmap", "check", "--graph", fixture.string(), "--what",
                                  "strata", "--samples", "4", "--seed", "5", "--out",
                                  (out / "bm").string()}) == 0);
    }
    return out;
  };
  auto a = run_into("a");
  auto b = run_into("b");
  int compared = 0;
  for (auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    auto rel = fs::relative(entry.path(), a);
    INFO(rel.string());
    CHECK(slurp(entry.path()) == slurp(b / rel));
    ++compared;
  }
  CHECK(compared >= 6);
}
