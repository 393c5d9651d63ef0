#pragma once

#include <string>
#include <vector>

#include "jewelbox/graphs.hpp"

namespace jewelbox::corpus {

struct NamedGraph {
  std::string name;
  graphs::Graph graph;
};

/// Two vertices joined by k parallel edges (k >= 3). banana(3) is the theta
/// graph.
graphs::Graph banana(int k);

/// A loop at each of two vertices joined by two parallel edges. Edge order:
/// e0 = loop at u, e1 = loop at v, e2, e3 = the parallel edges. Rank 3.
graphs::Graph two_loops_double_bar();

/// Three parallel edges plus a loop at one endpoint. Rank 3.
graphs::Graph banana_with_loop();

/// Triangle with two of its sides doubled. Rank 3.
graphs::Graph triangle_double_two();

/// Triangle with one doubled side and a loop at the opposite vertex. Rank 3.
graphs::Graph triangle_loop_double();

/// Every valid graph with at most 5 edges and rank at most 3 (up to
/// relabeling), plus the rank-4 rose.
std::vector<NamedGraph> standard_corpus();

}  // namespace jewelbox::corpus
