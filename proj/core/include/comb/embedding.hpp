#pragma once

#include <optional>
#include <string>
#include <vector>

#include "comb/graph.hpp"
#include "comb/matching.hpp"

namespace comb {

// m disjoint k-vertex paths, path r starting at roots[r]. When the spine is
// part of the witness (full-comb mode) spine_edges lists the m-1 edges
// joining consecutive roots.
struct CombEmbedding {
  int k = 0;
  std::vector<int> roots;
  std::vector<std::vector<int>> paths;
  std::optional<std::vector<std::pair<int, int>>> spine_edges;
};

// Threads the k-1 perfect matchings into per-root paths: path r is
// blocks[0][r], then its match in blocks[1], and so on. Throws
// std::invalid_argument if any matching is not perfect.
CombEmbedding assemble_paths(const std::vector<std::vector<int>>& blocks,
                             const std::vector<MatchingOutcome>& matchings);

struct VerifyResult {
  bool ok = false;
  std::string reason;  // first failed check when !ok
};

// Checks every structural invariant of the embedding against g: path count
// and lengths, roots in order, distinctness (and coverage when m*k = n),
// in-path adjacency, and spine adjacency when spine_edges is present.
VerifyResult verify_embedding(const Graph& g, const CombEmbedding& emb,
                              const std::vector<int>& expected_roots, int k);

// Simple m-vertex path via greedy depth-first extension with Posa-style
// rotations; gives up after 50*n rotations. Deterministic.
std::optional<std::vector<int>> find_spine(const Graph& g, int m);

// Exhaustive decision of comb containment for n = m*k <= 12 (refused above
// that). Backtracks over spines and tooth extensions.
bool brute_force_contains_comb(const Graph& g, int k);

// JSON shape: {"k":, "roots":[...], "paths":[[...]...], "spine_edges":[[u,v]...]?}
std::string embedding_to_json(const CombEmbedding& emb);
CombEmbedding embedding_from_json(const std::string& json);

// Human-readable layout: one line per path, spine first when present.
std::string embedding_to_text(const CombEmbedding& emb);

}  // namespace comb
