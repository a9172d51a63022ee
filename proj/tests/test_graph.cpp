#include <cmath>
#include <set>
#include <sstream>

#include <doctest.h>

#include "comb/graph.hpp"
#include "comb/rng.hpp"

using namespace comb;

TEST_SUITE_BEGIN("graph");

TEST_CASE("p=0 gives the edgeless graph") {
  Graph g = Graph::sample_gnp(5, 0.0, 123);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("p=1 gives the complete graph") {
  for (uint64_t seed : {0ull, 7ull, 99ull}) {
    Graph g = Graph::sample_gnp(5, 1.0, seed);
    CHECK(g.edge_count() == 10);
  }
}

TEST_CASE("identical (n,p,seed) reproduces the graph bit for bit") {
  Graph a = Graph::sample_gnp(200, 0.05, 42);
  Graph b = Graph::sample_gnp(200, 0.05, 42);
  CHECK(a == b);
  Graph c = Graph::sample_gnp(200, 0.05, 43);
  CHECK(a != c);
}

TEST_CASE("sampled graphs are symmetric and irreflexive") {
  for (double p : {0.02, 0.5}) {
    Graph g = Graph::sample_gnp(80, p, 11);
    for (int u = 0; u < 80; ++u) {
      CHECK(!g.has_edge(u, u));
      for (int v = 0; v < 80; ++v) CHECK(g.has_edge(u, v) == g.has_edge(v, u));
    }
  }
}

TEST_CASE("edge count lands within 5 sigma of the binomial mean") {
  // n=1e4, p=0.01: mean = C(n,2) p ~ 499950, sigma ~ 703
  Graph g = Graph::sample_gnp(10000, 0.01, 7);
  const double pairs = 10000.0 * 9999.0 / 2.0;
  const double mean = pairs * 0.01;
  const double sigma = std::sqrt(pairs * 0.01 * 0.99);
  CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) < 5.0 * sigma);
}

TEST_CASE("mean edge count over 1000 samples within 3 standard errors") {
  const int n = 100;
  const double p = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  double total = 0;
  for (uint64_t s = 0; s < 1000; ++s)
    total += static_cast<double>(Graph::sample_gnp(n, p, 9000 + s).edge_count());
  const double mean = total / 1000.0;
  const double se = std::sqrt(pairs * p * (1 - p) / 1000.0);
  CHECK(std::abs(mean - pairs * p) < 3.0 * se);
}

TEST_CASE("count_nbrs_in matches a brute-force loop on small graphs") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 64;
    Graph g = Graph::sample_gnp(n, 0.2, 100 + static_cast<uint64_t>(rep));
    Bitset s(n);
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
      if (rng.next_double() < 0.3) {
        s.set(v);
        members.push_back(v);
      }
    }
    for (int x = 0; x < n; ++x) {
      int expect = 0;
      for (int v : members)
        if (g.has_edge(x, v)) ++expect;
      CHECK(count_nbrs_in(g, x, s) == expect);
    }
  }
}

TEST_CASE("count_nbrs_in trivial cases") {
  Graph k5 = Graph::sample_gnp(5, 1.0, 1);
  CHECK(count_nbrs_in(k5, 0, std::vector<int>{1, 2, 3}) == 3);

  Graph g(4);  // vertex 0 isolated
  g.add_edge(1, 2);
  CHECK(count_nbrs_in(g, 0, std::vector<int>{1, 2, 3}) == 0);
  CHECK(count_nbrs_in(g, 1, std::vector<int>{}) == 0);
}

TEST_CASE("edges_between on K4 and the edgeless graph") {
  Graph k4 = Graph::sample_gnp(4, 1.0, 3);
  auto between = edges_between(k4, std::vector<int>{0, 1}, std::vector<int>{2, 3});
  CHECK(between.size() == 4);

  Graph empty(6);
  CHECK(edges_between(empty, std::vector<int>{0, 1}, std::vector<int>{2}).empty());
}

TEST_CASE("edges_between matches the double loop on random graphs") {
  for (int rep = 0; rep < 10; ++rep) {
    Graph g = Graph::sample_gnp(40, 0.3, 500 + static_cast<uint64_t>(rep));
    std::vector<int> a, b;
    for (int v = 0; v < 40; ++v) {
      if (v % 3 == 0) a.push_back(v);
      else if (v % 3 == 1) b.push_back(v);
    }
    size_t expect = 0;
    for (int u : a)
      for (int v : b)
        if (g.has_edge(u, v)) ++expect;
    CHECK(edges_between(g, a, b).size() == expect);
  }
}

TEST_CASE("edges_between rejects overlapping sets") {
  Graph g(4);
  CHECK_THROWS_AS(edges_between(g, std::vector<int>{0, 1}, std::vector<int>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("sample_layers: p=1 makes all layers complete, p=0 empty") {
  LayeredGraph full = sample_layers(4, 1.0, 17);
  for (int i = 0; i < 3; ++i) CHECK(full.layer(i).edge_count() == 6);
  CHECK(full.union_graph.edge_count() == 6);

  LayeredGraph empty = sample_layers(100, 0.0, 17);
  for (int i = 0; i < 3; ++i) CHECK(empty.layer(i).edge_count() == 0);
  CHECK(empty.union_graph.edge_count() == 0);
}

TEST_CASE("sample_layers: layers distinct, union dominates per-vertex degree") {
  LayeredGraph lg = sample_layers(100, 0.5, 3);
  CHECK(lg.g1 != lg.g2);
  CHECK(lg.g1 != lg.g3);
  CHECK(lg.g2 != lg.g3);
  for (int v = 0; v < 100; ++v) {
    const int du = lg.union_graph.degree(v);
    CHECK(du >= lg.g1.degree(v));
    CHECK(du >= lg.g2.degree(v));
    CHECK(du >= lg.g3.degree(v));
  }
  // union is exactly the set-union of the three layers
  for (int u = 0; u < 100; ++u)
    for (int v = u + 1; v < 100; ++v)
      CHECK(lg.union_graph.has_edge(u, v) ==
            (lg.g1.has_edge(u, v) || lg.g2.has_edge(u, v) || lg.g3.has_edge(u, v)));
  // reproducible
  LayeredGraph again = sample_layers(100, 0.5, 3);
  CHECK(again.g1 == lg.g1);
  CHECK(again.union_graph == lg.union_graph);
}

TEST_CASE("edge list round trip") {
  Graph g = Graph::sample_gnp(30, 0.2, 77);
  std::stringstream ss(g.to_edge_list());
  Graph back = Graph::read_edge_list(ss);
  CHECK(back == g);
}

TEST_CASE("sampler rejects bad arguments") {
  CHECK_THROWS_AS(Graph::sample_gnp(10, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Graph::sample_gnp(10, 1.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Graph::sample_gnp(0, 0.5, 1), std::invalid_argument);
}

TEST_SUITE_END();
