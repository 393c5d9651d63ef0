#include "jewelbox/corpus.hpp"

namespace jewelbox::corpus {

using graphs::Graph;

Graph banana(int k) {
  Graph g;
  g.vertices = 2;
  for (int i = 0; i < k; ++i) g.edges.emplace_back(0, 1);
  return g;
}

Graph two_loops_double_bar() {
  Graph g;
  g.vertices = 2;
  g.edges = {{0, 0}, {1, 1}, {0, 1}, {0, 1}};
  return g;
}

Graph banana_with_loop() {
  Graph g;
  g.vertices = 2;
  g.edges = {{0, 0}, {0, 1}, {0, 1}, {0, 1}};
  return g;
}

Graph triangle_double_two() {
  Graph g;
  g.vertices = 3;
  g.edges = {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}};
  return g;
}

Graph triangle_loop_double() {
  Graph g;
  g.vertices = 3;
  g.edges = {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 2}};
  return g;
}

std::vector<NamedGraph> standard_corpus() {
  return {
      {"rose2", graphs::rose(2)},
      {"rose3", graphs::rose(3)},
      {"theta", banana(3)},
      {"two-loops-double-bar", two_loops_double_bar()},
      {"banana-with-loop", banana_with_loop()},
      {"banana4", banana(4)},
      {"triangle-double-two", triangle_double_two()},
      {"triangle-loop-double", triangle_loop_double()},
      {"rose4", graphs::rose(4)},
  };
}

}  // namespace jewelbox::corpus
