#include "comb/embedding.hpp"

#include <algorithm>
#include <stdexcept>

namespace comb {

CombEmbedding assemble_paths(const std::vector<std::vector<int>>& blocks,
                             const std::vector<MatchingOutcome>& matchings) {
  if (blocks.empty()) throw std::invalid_argument("assemble_paths: no blocks");
  if (matchings.size() + 1 != blocks.size())
    throw std::invalid_argument("assemble_paths: need k-1 matchings for k blocks");
  for (const auto& mo : matchings)
    if (!mo.perfect)
      throw std::invalid_argument("assemble_paths: all matchings must be perfect");

  const int k = static_cast<int>(blocks.size());
  const size_t m = blocks.front().size();

  CombEmbedding emb;
  emb.k = k;
  emb.roots = blocks.front();
  emb.paths.assign(m, {});
  for (size_t r = 0; r < m; ++r) {
    emb.paths[r].reserve(static_cast<size_t>(k));
    int pos = static_cast<int>(r);
    emb.paths[r].push_back(blocks[0][r]);
    for (int i = 1; i < k; ++i) {
      pos = matchings[static_cast<size_t>(i - 1)].pair_left[static_cast<size_t>(pos)];
      emb.paths[r].push_back(blocks[static_cast<size_t>(i)][static_cast<size_t>(pos)]);
    }
  }
  return emb;
}

VerifyResult verify_embedding(const Graph& g, const CombEmbedding& emb,
                              const std::vector<int>& expected_roots, int k) {
  auto reject = [](std::string why) { return VerifyResult{false, std::move(why)}; };
  const int n = g.vertex_count();
  const size_t m = expected_roots.size();

  if (emb.paths.size() != m)
    return reject("path count " + std::to_string(emb.paths.size()) +
                  " != expected " + std::to_string(m));
  if (emb.roots != expected_roots) return reject("roots differ from expected roots");

  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (size_t r = 0; r < m; ++r) {
    const auto& path = emb.paths[r];
    if (path.size() != static_cast<size_t>(k))
      return reject("path " + std::to_string(r) + " has length " +
                    std::to_string(path.size()) + ", expected " + std::to_string(k));
    if (path.front() != expected_roots[r])
      return reject("path " + std::to_string(r) + " does not start at its root");
    for (int v : path) {
      if (v < 0 || v >= n)
        return reject("vertex " + std::to_string(v) + " out of range");
      if (seen[static_cast<size_t>(v)])
        return reject("vertex " + std::to_string(v) + " appears in two paths");
      seen[static_cast<size_t>(v)] = 1;
    }
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      if (!g.has_edge(path[i], path[i + 1]))
        return reject("path " + std::to_string(r) + ": " + std::to_string(path[i]) +
                      "-" + std::to_string(path[i + 1]) + " is not an edge");
    }
  }

  if (m * static_cast<size_t>(k) == static_cast<size_t>(n)) {
    for (int v = 0; v < n; ++v)
      if (!seen[static_cast<size_t>(v)])
        return reject("vertex " + std::to_string(v) + " not covered");
  }

  if (emb.spine_edges) {
    if (m >= 1 && emb.spine_edges->size() != m - 1)
      return reject("spine edge count " + std::to_string(emb.spine_edges->size()) +
                    " != m-1");
    for (size_t i = 0; i + 1 < m; ++i) {
      auto [u, v] = (*emb.spine_edges)[i];
      const int a = expected_roots[i], b = expected_roots[i + 1];
      if (!((u == a && v == b) || (u == b && v == a)))
        return reject("spine edge " + std::to_string(i) +
                      " does not join consecutive roots");
      if (!g.has_edge(a, b))
        return reject("spine: " + std::to_string(a) + "-" + std::to_string(b) +
                      " is not an edge");
    }
  }

  return {true, ""};
}

std::optional<std::vector<int>> find_spine(const Graph& g, int m) {
  const int n = g.vertex_count();
  if (m < 1 || m > n) throw std::invalid_argument("find_spine: m out of range");
  if (m == 1) return std::vector<int>{0};

  std::vector<int> path{0};
  std::vector<char> on_path(static_cast<size_t>(n), 0);
  on_path[0] = 1;
  long long rotations_left = 50LL * n;
  // endpoints already taken at the current length; cleared on growth
  std::vector<char> tried_end(static_cast<size_t>(n), 0);
  tried_end[0] = 1;

  auto extend_from_back = [&]() -> bool {
    const Bitset& nbrs = g.neighbors(path.back());
    for (int v = 0; v < n; ++v) {
      if (nbrs.test(v) && !on_path[static_cast<size_t>(v)]) {
        path.push_back(v);
        on_path[static_cast<size_t>(v)] = 1;
        std::fill(tried_end.begin(), tried_end.end(), 0);
        tried_end[static_cast<size_t>(v)] = 1;
        return true;
      }
    }
    return false;
  };

  while (static_cast<int>(path.size()) < m) {
    if (extend_from_back()) continue;

    // Rotate: an edge from the endpoint to path[i] makes path[i+1] the new
    // endpoint after reversing the tail.
    bool rotated = false;
    if (rotations_left > 0) {
      const int len = static_cast<int>(path.size());
      const Bitset& nbrs = g.neighbors(path.back());
      for (int i = 0; i + 2 < len; ++i) {
        if (!nbrs.test(path[static_cast<size_t>(i)])) continue;
        const int new_end = path[static_cast<size_t>(i + 1)];
        if (tried_end[static_cast<size_t>(new_end)]) continue;
        std::reverse(path.begin() + i + 1, path.end());
        tried_end[static_cast<size_t>(new_end)] = 1;
        --rotations_left;
        rotated = true;
        break;
      }
    }
    if (rotated) continue;

    // Last resort: work from the other end once per length.
    if (!tried_end[static_cast<size_t>(path.front())]) {
      std::reverse(path.begin(), path.end());
      tried_end[static_cast<size_t>(path.back())] = 1;
      continue;
    }
    return std::nullopt;
  }
  return path;
}

namespace {

struct CombSearch {
  const Graph& g;
  int n, m, k;
  std::vector<char> used;
  std::vector<int> spine;

  CombSearch(const Graph& graph, int teeth, int tooth_len)
      : g(graph),
        n(graph.vertex_count()),
        m(teeth),
        k(tooth_len),
        used(static_cast<size_t>(graph.vertex_count()), 0) {}

  // Extend tooth `t` (currently ending at `tip` with `left` vertices still
  // needed), then move on to the next tooth.
  bool teeth_from(int t, int tip, int left) {
    if (left == 0) return next_tooth(t + 1);
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<size_t>(v)] || !g.has_edge(tip, v)) continue;
      used[static_cast<size_t>(v)] = 1;
      if (teeth_from(t, v, left - 1)) return true;
      used[static_cast<size_t>(v)] = 0;
    }
    return false;
  }

  bool next_tooth(int t) {
    if (t == m) return true;
    return teeth_from(t, spine[static_cast<size_t>(t)], k - 1);
  }

  bool grow_spine(int len) {
    if (len == m) return next_tooth(0);
    const int tip = spine.back();
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<size_t>(v)] || !g.has_edge(tip, v)) continue;
      used[static_cast<size_t>(v)] = 1;
      spine.push_back(v);
      if (grow_spine(len + 1)) return true;
      spine.pop_back();
      used[static_cast<size_t>(v)] = 0;
    }
    return false;
  }

  bool run() {
    for (int start = 0; start < n; ++start) {
      used.assign(static_cast<size_t>(n), 0);
      used[static_cast<size_t>(start)] = 1;
      spine = {start};
      if (grow_spine(1)) return true;
    }
    return false;
  }
};

}  // namespace

bool brute_force_contains_comb(const Graph& g, int k) {
  const int n = g.vertex_count();
  if (n > 12)
    throw std::invalid_argument("brute_force_contains_comb: n > 12 refused");
  if (k < 1 || n % k != 0)
    throw std::invalid_argument("brute_force_contains_comb: k must divide n");
  CombSearch search(g, n / k, k);
  return search.run();
}

}  // namespace comb
