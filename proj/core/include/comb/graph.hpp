#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "comb/bitset.hpp"

namespace comb {

// Undirected simple graph on vertices {0, ..., n-1} stored as dense bit rows.
// Symmetric and irreflexive by construction; immutable in practice once built
// (samplers and loaders hand out finished graphs), so safe to share across
// concurrent trial workers.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int vertex_count() const { return n_; }

  bool has_edge(int u, int v) const { return rows_[static_cast<size_t>(u)].test(v); }

  // Inserts {u, v}; u != v required. Idempotent.
  void add_edge(int u, int v);

  // Neighborhood of x as a bit row.
  const Bitset& neighbors(int x) const { return rows_[static_cast<size_t>(x)]; }

  int degree(int x) const { return rows_[static_cast<size_t>(x)].count(); }

  long long edge_count() const;

  // All edges as (u, v) with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;

  // In-place union with another graph on the same vertex set.
  void merge(const Graph& other);

  static Graph union_of(const Graph& a, const Graph& b);

  // G(n, p) sampler: every unordered pair present independently with
  // probability p. Same (n, p, seed) gives a bit-identical graph. Sparse
  // probabilities use geometric skipping over the row-major pair sequence
  // (expected O(p n^2) work); p > 0.1 falls back to per-pair Bernoulli.
  static Graph sample_gnp(int n, double p, uint64_t seed);

  // Line-based dump: first line "n", then one "u v" per edge (u < v).
  std::string to_edge_list() const;
  void write_edge_list(std::ostream& os) const;
  static Graph read_edge_list(std::istream& is);

  bool operator==(const Graph& other) const = default;

 private:
  int n_ = 0;
  std::vector<Bitset> rows_;
};

// |N_g(x) ∩ S|.
int count_nbrs_in(const Graph& g, int x, const Bitset& s);
int count_nbrs_in(const Graph& g, int x, const std::vector<int>& s);

// Edges with one endpoint in A and the other in B. A and B must be disjoint;
// overlapping sets are rejected with std::invalid_argument. Pairs come out as
// (a, b) with a in A, ascending by (a, b).
std::vector<std::pair<int, int>> edges_between(const Graph& g, const Bitset& a,
                                               const Bitset& b);
std::vector<std::pair<int, int>> edges_between(const Graph& g,
                                               const std::vector<int>& a,
                                               const std::vector<int>& b);

// Three independent G(n, p) layers on a common vertex set plus their union.
// Layer i draws from the derived stream (seed, kLayerBase + i), so each layer
// is individually reproducible.
struct LayeredGraph {
  Graph g1, g2, g3;
  Graph union_graph;

  const Graph& layer(int i) const;
};

LayeredGraph sample_layers(int n, double p, uint64_t seed);

}  // namespace comb
