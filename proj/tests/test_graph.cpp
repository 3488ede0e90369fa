#include <doctest.h>

#include <stdexcept>

#include "ctxdim/graph.hpp"

using namespace ctxdim;

TEST_SUITE("graph") {
  TEST_CASE("edges are normalized and validated") {
    Graph g(4, {{3, 1}, {2, 4}});
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 3}, {2, 4}});
    CHECK(g.adjacent(3, 1));
    CHECK_FALSE(g.adjacent(1, 2));
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{1, 4}}), std::invalid_argument);
  }

  TEST_CASE("independence numbers of standard families") {
    CHECK(independence_number(graphs::cycle(5)) == 2);
    CHECK(independence_number(graphs::cycle(6)) == 3);
    CHECK(independence_number(graphs::path(7)) == 4);
    CHECK(independence_number(graphs::complete(6)) == 1);
    CHECK(independence_number(graphs::edgeless(5)) == 5);
    CHECK(independence_number(graphs::gkk()) == 3);
  }

  TEST_CASE("maximum independent set is independent and maximum") {
    const Graph g = graphs::gkk();
    const auto s = maximum_independent_set(g);
    CHECK(s.size() == 3);
    CHECK(is_independent_set(g, s));
  }

  TEST_CASE("independence number agrees with brute force") {
    // Petersen graph: alpha = 4.
    Graph petersen(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                        {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}});
    int best = 0;
    for (unsigned m = 0; m < (1u << 10); ++m) {
      std::vector<int> s;
      for (int v = 1; v <= 10; ++v)
        if (m & (1u << (v - 1))) s.push_back(v);
      if (is_independent_set(petersen, VertexSubset(s))) best = std::max(best, int(s.size()));
    }
    CHECK(best == 4);
    CHECK(independence_number(petersen) == 4);
  }

  TEST_CASE("cliques of the nine-vertex graph") {
    const auto tri = enumerate_cliques(graphs::gkk(), 3);
    REQUIRE(tri.size() == 2);
    CHECK(tri[0] == VertexSubset{1, 2, 3});
    CHECK(tri[1] == VertexSubset{4, 7, 8});
    CHECK(enumerate_cliques(graphs::gkk(), 4).empty());
    CHECK(enumerate_cliques(graphs::complete(5), 3).size() == 10);
  }

  TEST_CASE("induced subgraph relabels vertices") {
    const auto sub = induced_subgraph(graphs::gkk(), VertexSubset{1, 2, 3, 4});
    CHECK(sub.graph.size() == 4);
    CHECK(sub.original_label == std::vector<int>{1, 2, 3, 4});
    CHECK(sub.graph.edge_count() == 4);
    CHECK_THROWS_AS(validate_subset(graphs::gkk(), VertexSubset{0, 3}), std::invalid_argument);
  }

  TEST_CASE("parsing round-trips") {
    const Graph g = graphs::gkk();
    CHECK(parse_graph(graph_to_json(g)) == g);
    CHECK(parse_graph("3\n1 2 # comment\n2 3\n") == graphs::path(3));
    CHECK_THROWS(parse_graph("{\"n\": 2, \"edges\": [[1, 3]]}"));
  }
}
