#include <set>

#include <doctest.h>

#include "comb/embedding.hpp"
#include "comb/rng.hpp"
#include "support/oracles.hpp"

using namespace comb;

TEST_SUITE_BEGIN("embedding");

TEST_CASE("assemble: k=1 paths are the roots themselves") {
  auto emb = assemble_paths({{3, 1, 4}}, {});
  CHECK(emb.k == 1);
  CHECK(emb.paths == std::vector<std::vector<int>>{{3}, {1}, {4}});
  CHECK(emb.roots == std::vector<int>{3, 1, 4});
}

TEST_CASE("assemble: k=2 m=1 single matched pair") {
  MatchingOutcome mo;
  mo.perfect = true;
  mo.size = 1;
  mo.pair_left = {0};
  mo.pair_right = {0};
  auto emb = assemble_paths({{7}, {2}}, {mo});
  CHECK(emb.paths == std::vector<std::vector<int>>{{7, 2}});
}

TEST_CASE("assemble rejects deficient matchings") {
  MatchingOutcome mo;  // not perfect
  CHECK_THROWS_AS(assemble_paths({{0}, {1}}, {mo}), std::invalid_argument);
}

TEST_CASE("verify accepts P4 as comb_{4,2} and rejects tampered versions") {
  Graph p4(4);
  p4.add_edge(2, 0);  // u1 - v1
  p4.add_edge(0, 1);  // v1 - v2 (spine)
  p4.add_edge(1, 3);  // v2 - u2

  CombEmbedding emb;
  emb.k = 2;
  emb.roots = {0, 1};
  emb.paths = {{0, 2}, {1, 3}};
  emb.spine_edges = std::vector<std::pair<int, int>>{{0, 1}};
  CHECK(verify_embedding(p4, emb, {0, 1}, 2).ok);

  // missing tooth edge
  Graph broken(4);
  broken.add_edge(0, 1);
  broken.add_edge(1, 3);
  auto vr = verify_embedding(broken, emb, {0, 1}, 2);
  CHECK(!vr.ok);
  CHECK(vr.reason.find("not an edge") != std::string::npos);

  // duplicated vertex across paths
  CombEmbedding dup = emb;
  dup.paths = {{0, 2}, {1, 2}};
  auto vr2 = verify_embedding(p4, dup, {0, 1}, 2);
  CHECK(!vr2.ok);
  CHECK(vr2.reason.find("two paths") != std::string::npos);

  // wrong root order
  auto vr3 = verify_embedding(p4, emb, {1, 0}, 2);
  CHECK(!vr3.ok);
}

TEST_CASE("verifier matches hand enumeration on small graphs") {
  // C6 with k=3: 6-cycle 0-1-2-3-4-5-0; comb_{6,3} = two 3-paths with
  // adjacent roots
  Graph c6(6);
  for (int i = 0; i < 6; ++i) c6.add_edge(i, (i + 1) % 6);

  CombEmbedding emb;
  emb.k = 3;
  emb.roots = {0, 1};
  emb.paths = {{0, 5, 4}, {1, 2, 3}};
  emb.spine_edges = std::vector<std::pair<int, int>>{{0, 1}};
  CHECK(verify_embedding(c6, emb, {0, 1}, 3).ok);

  // non-adjacent roots: same teeth but claiming spine edge 0-2
  CombEmbedding bad = emb;
  bad.roots = {0, 2};
  bad.paths = {{0, 5, 4}, {2, 1, 3}};  // 1-3 is not an edge either
  bad.spine_edges = std::vector<std::pair<int, int>>{{0, 2}};
  CHECK(!verify_embedding(c6, bad, {0, 2}, 3).ok);

  // wrong path length
  CombEmbedding short_path = emb;
  short_path.paths = {{0, 5}, {1, 2, 3}};
  auto vr = verify_embedding(c6, short_path, {0, 1}, 3);
  CHECK(!vr.ok);
  CHECK(vr.reason.find("length") != std::string::npos);
}

TEST_CASE("find_spine: complete graph yields a Hamilton path") {
  Graph kn = Graph::sample_gnp(30, 1.0, 9);
  auto path = find_spine(kn, 30);
  REQUIRE(path.has_value());
  CHECK(path->size() == 30);
  std::set<int> uniq(path->begin(), path->end());
  CHECK(uniq.size() == 30);
  for (size_t i = 0; i + 1 < path->size(); ++i)
    CHECK(kn.has_edge((*path)[i], (*path)[i + 1]));
}

TEST_CASE("find_spine: edgeless graph fails for m >= 2") {
  Graph empty(10);
  CHECK(!find_spine(empty, 2).has_value());
  CHECK(find_spine(empty, 1).has_value());
}

TEST_CASE("find_spine on sparse random graphs returns only valid simple paths") {
  const int n = 2000, m = 333;
  int successes = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = Graph::sample_gnp(n, 5.0 / n, 7000 + seed);
    auto path = find_spine(g, m);
    if (!path) continue;
    ++successes;
    REQUIRE(path->size() == static_cast<size_t>(m));
    std::set<int> uniq(path->begin(), path->end());
    CHECK(uniq.size() == static_cast<size_t>(m));
    for (size_t i = 0; i + 1 < path->size(); ++i)
      CHECK(g.has_edge((*path)[i], (*path)[i + 1]));
  }
  MESSAGE("find_spine success rate at G(2000, 5/n), m=333: ", successes, "/50");
  CHECK(successes > 0);
}

TEST_CASE("brute force containment: C4, star, K6") {
  Graph c4(4);
  for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
  CHECK(brute_force_contains_comb(c4, 2));  // C4 contains P4

  Graph star(4);  // K_{1,3} has no P4
  for (int leaf = 1; leaf < 4; ++leaf) star.add_edge(0, leaf);
  CHECK(!brute_force_contains_comb(star, 2));

  Graph k6 = Graph::sample_gnp(6, 1.0, 1);
  CHECK(brute_force_contains_comb(k6, 3));
  CHECK(brute_force_contains_comb(k6, 2));
  CHECK(brute_force_contains_comb(k6, 1));
  CHECK(brute_force_contains_comb(k6, 6));
}

TEST_CASE("brute force refuses oversized and indivisible inputs") {
  Graph big(13);
  CHECK_THROWS_AS(brute_force_contains_comb(big, 1), std::invalid_argument);
  Graph g(6);
  CHECK_THROWS_AS(brute_force_contains_comb(g, 4), std::invalid_argument);
}

TEST_CASE("pipeline successes on one tiny graph are confirmed by the oracle") {
  Rng rng(31337);
  int successes = 0;
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 8;
    const int k = (seed % 2 == 0) ? 2 : 4;
    Graph g = Graph::sample_gnp(n, 0.55, 600 + seed);
    auto res = oracles::run_pipeline_on_graph(g, k, 0.55, seed);
    if (res.success) {
      ++successes;
      CHECK(brute_force_contains_comb(g, k));
      REQUIRE(res.embedding.has_value());
      CHECK(verify_embedding(g, *res.embedding, res.embedding->roots, k).ok);
    }
  }
  MESSAGE("tiny pipeline successes: ", successes, "/60");
  CHECK(successes > 0);
}

TEST_CASE("embedding JSON round trip and text layout") {
  CombEmbedding emb;
  emb.k = 2;
  emb.roots = {0, 1};
  emb.paths = {{0, 2}, {1, 3}};
  emb.spine_edges = std::vector<std::pair<int, int>>{{0, 1}};

  CombEmbedding back = embedding_from_json(embedding_to_json(emb));
  CHECK(back.k == emb.k);
  CHECK(back.roots == emb.roots);
  CHECK(back.paths == emb.paths);
  REQUIRE(back.spine_edges.has_value());
  CHECK(*back.spine_edges == *emb.spine_edges);

  const std::string text = embedding_to_text(emb);
  CHECK(text.find("path 0: 0 2") != std::string::npos);
  CHECK(text.find("spine: 0 1") != std::string::npos);
}

TEST_SUITE_END();
