#pragma once

#include <span>
#include <vector>

#include "comb/graph.hpp"

namespace comb {

// Bipartite adjacency, left -> right. Left vertices may share an adjacency
// row ("grouped" instances): the fill-in phase has blocks of interchangeable
// slots, and storing one row per block instead of one per slot keeps that
// instance linear in n. Plain instances have one row per left vertex.
class BipartiteInstance {
 public:
  BipartiteInstance() = default;

  // One adjacency row per left vertex. Rows are sorted and deduplicated.
  static BipartiteInstance from_lists(std::vector<std::vector<int>> rows,
                                      int right_size);

  // multiplicity[g] left vertices all sharing group_rows[g]. Left vertices
  // are numbered group by group: group 0's slots first, then group 1's, ...
  static BipartiteInstance grouped(const std::vector<int>& multiplicity,
                                   std::vector<std::vector<int>> group_rows,
                                   int right_size);

  int left_size() const { return static_cast<int>(row_of_.size()); }
  int right_size() const { return right_; }
  std::span<const int> neighbors(int l) const {
    return rows_[static_cast<size_t>(row_of_[static_cast<size_t>(l)])];
  }
  // Row (= group) index backing left vertex l; the identity for plain
  // instances.
  int group_of(int l) const { return row_of_[static_cast<size_t>(l)]; }

 private:
  std::vector<std::vector<int>> rows_;
  std::vector<int> row_of_;
  int right_ = 0;
};

// Result of a maximum-matching computation. Exactly one of the two shapes:
//   perfect:   pair_left is a left-total injection into the right side.
//   deficient: pair_left is a maximum matching that misses some left vertex,
//              and violator is a Hall certificate: a left set A with
//              |N(A)| < |A| (the alternating-reachable set from the first
//              unmatched left vertex, so |N(A)| = |A| - 1).
struct MatchingOutcome {
  bool perfect = false;
  int size = 0;
  std::vector<int> pair_left;   // left -> right index, -1 if unmatched
  std::vector<int> pair_right;  // right -> left index, -1 if unmatched
  std::vector<int> violator;    // empty iff perfect
};

// Hopcroft-Karp maximum matching. Deterministic: left vertices and adjacency
// rows are processed in ascending order.
MatchingOutcome max_matching(const BipartiteInstance& inst);

// The k-1 matchings G[M_{i-1}, M_i] joining consecutive blocks, computed on
// the union graph. blocks must be disjoint and of equal size. Outcome i
// pairs positions of blocks[i] with positions of blocks[i+1].
std::vector<MatchingOutcome> block_matchings(
    const Graph& g, const std::vector<std::vector<int>>& blocks);

}  // namespace comb
