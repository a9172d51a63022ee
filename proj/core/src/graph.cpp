#include "comb/graph.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "comb/rng.hpp"

namespace comb {

Graph::Graph(int n) : n_(n), rows_(static_cast<size_t>(n), Bitset(n)) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::out_of_range("Graph::add_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("Graph::add_edge: loop rejected");
  rows_[static_cast<size_t>(u)].set(v);
  rows_[static_cast<size_t>(v)].set(u);
}

long long Graph::edge_count() const {
  long long deg_sum = 0;
  for (int x = 0; x < n_; ++x) deg_sum += degree(x);
  return deg_sum / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    rows_[static_cast<size_t>(u)].for_each([&](int v) {
      if (u < v) out.emplace_back(u, v);
    });
  }
  return out;
}

void Graph::merge(const Graph& other) {
  if (other.n_ != n_) throw std::invalid_argument("Graph::merge: size mismatch");
  for (int x = 0; x < n_; ++x) rows_[static_cast<size_t>(x)] |= other.rows_[static_cast<size_t>(x)];
}

Graph Graph::union_of(const Graph& a, const Graph& b) {
  Graph g = a;
  g.merge(b);
  return g;
}

Graph Graph::sample_gnp(int n, double p, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p outside [0,1]");
  Graph g(n);
  if (p == 0.0 || n == 1) return g;

  Rng rng(seed);
  const long long total = static_cast<long long>(n) * (n - 1) / 2;

  if (p > 0.1) {
    // Dense regime: one Bernoulli draw per unordered pair.
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.next_double() < p) g.add_edge(u, v);
      }
    }
    return g;
  }

  // Sparse regime: geometric skips through the pair sequence.
  const double log1mp = std::log1p(-p);
  long long idx = -1;
  int u = 0;
  long long row_start = 0;  // linear index of pair (u, u+1)
  for (;;) {
    double r = rng.next_double_pos();
    double skip = std::floor(std::log(r) / log1mp);
    if (skip > static_cast<double>(total)) break;
    idx += 1 + static_cast<long long>(skip);
    if (idx >= total) break;
    while (idx >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    int v = u + 1 + static_cast<int>(idx - row_start);
    g.add_edge(u, v);
  }
  return g;
}

std::string Graph::to_edge_list() const {
  std::ostringstream os;
  write_edge_list(os);
  return os.str();
}

void Graph::write_edge_list(std::ostream& os) const {
  os << n_ << "\n";
  for (auto [u, v] : edges()) os << u << " " << v << "\n";
}

Graph Graph::read_edge_list(std::istream& is) {
  int n = 0;
  if (!(is >> n)) throw std::invalid_argument("edge list: missing vertex count header");
  Graph g(n);
  int u, v;
  while (is >> u >> v) g.add_edge(u, v);
  return g;
}

int count_nbrs_in(const Graph& g, int x, const Bitset& s) {
  return g.neighbors(x).and_count(s);
}

int count_nbrs_in(const Graph& g, int x, const std::vector<int>& s) {
  Bitset mask(g.vertex_count());
  for (int v : s) mask.set(v);
  return count_nbrs_in(g, x, mask);
}

std::vector<std::pair<int, int>> edges_between(const Graph& g, const Bitset& a,
                                               const Bitset& b) {
  if (a.intersects(b)) throw std::invalid_argument("edges_between: sets overlap");
  std::vector<std::pair<int, int>> out;
  a.for_each([&](int u) {
    g.neighbors(u).for_each([&](int v) {
      if (b.test(v)) out.emplace_back(u, v);
    });
  });
  return out;
}

std::vector<std::pair<int, int>> edges_between(const Graph& g,
                                               const std::vector<int>& a,
                                               const std::vector<int>& b) {
  Bitset ma(g.vertex_count()), mb(g.vertex_count());
  for (int v : a) ma.set(v);
  for (int v : b) mb.set(v);
  return edges_between(g, ma, mb);
}

const Graph& LayeredGraph::layer(int i) const {
  switch (i) {
    case 0: return g1;
    case 1: return g2;
    case 2: return g3;
    default: throw std::out_of_range("LayeredGraph::layer");
  }
}

LayeredGraph sample_layers(int n, double p, uint64_t seed) {
  LayeredGraph lg;
  lg.g1 = Graph::sample_gnp(n, p, derive_seed(seed, seed_tag::kLayerBase + 0));
  lg.g2 = Graph::sample_gnp(n, p, derive_seed(seed, seed_tag::kLayerBase + 1));
  lg.g3 = Graph::sample_gnp(n, p, derive_seed(seed, seed_tag::kLayerBase + 2));
  lg.union_graph = lg.g1;
  lg.union_graph.merge(lg.g2);
  lg.union_graph.merge(lg.g3);
  return lg;
}

}  // namespace comb
