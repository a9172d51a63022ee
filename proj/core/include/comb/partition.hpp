#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "comb/graph.hpp"
#include "comb/matching.hpp"
#include "comb/params.hpp"

namespace comb {

// Adjacent block indices: L(i) = {i-1, i+1} ∩ {0..k-1}.
std::vector<int> block_neighbors(int i, int k);

enum class Phase { initialized, first_step_done, repaired, filled };

// State of the three-phase block-building procedure.
//
// Vertices are assigned to blocks 0..k-1; block 0 is the given roots and
// never grows. W holds the first-step installments only (W[0] = roots); the
// evolving block contents live in `assignment`. B[i] (i >= 1) is the set of
// vertices barred from block i, X maps (i, j) to the vertices of W_i with
// fewer than T G1-neighbors in W_j for j in L(i), and repair_edges is the
// star forest of G2 edges consumed while fixing them.
struct PartitionState {
  int n = 0;
  int k = 0;
  int m = 0;

  std::vector<int> roots;       // spine order preserved
  std::vector<Bitset> W;        // k first-step sets; W[0] = roots
  Bitset Z;                     // {x in R : |N1(x) ∩ W0| < T}
  std::vector<Bitset> B;        // B[0] unused; B[1..k-1] barred sets
  std::map<std::pair<int, int>, std::vector<int>> X;  // deficient sets
  std::vector<int> assignment;  // vertex -> block, -1 while unassigned
  std::vector<int> block_count;
  std::vector<std::pair<int, int>> repair_edges;  // (deficient center, added)

  Phase phase = Phase::initialized;
  bool barred_computed = false;
  bool deficient_computed = false;

  // Lowest global availability seen across repair steps; -1 if none ran.
  long long min_repair_avail = -1;

  bool assigned(int v) const { return assignment[static_cast<size_t>(v)] >= 0; }

  // Final block contents: blocks()[0] is the roots in spine order, the rest
  // ascending by vertex id.
  std::vector<std::vector<int>> blocks() const;
};

// Repair ran out of options at `vertex`: fewer than T of its G2 neighbors
// were still assignable to `block`.
struct StuckInRepair {
  int vertex = -1;
  int block = -1;
  int available = 0;
};

struct FillFailure {
  enum class Kind { infeasible, negative_deficit };
  Kind kind = Kind::infeasible;
  // infeasible: Hall certificate from the slot side of the fill graph.
  std::vector<int> violator_blocks;  // blocks whose slots form the violator
  int violator_size = 0;
  int right_neighborhood_size = 0;
  // negative_deficit: the block that exceeded m during repair.
  int block = -1;
};

// First step: computes Z from G1 and places each non-root vertex
// independently into one of the eligible blocks with probability alpha/k per
// block (blocks 1..k-1, or 2..k-1 for vertices of Z), leaving it unassigned
// otherwise. k = 1 degenerates to phase = filled with block 0 = roots = V.
PartitionState first_step(const Graph& g1, const std::vector<int>& roots,
                          const ParamSet& ps, uint64_t seed);

// B_i = {x in R \ W : some j in L(i) has |N1(x) ∩ W_j| < T}, i in 1..k-1.
void compute_barred(const Graph& g1, PartitionState& st, const ParamSet& ps);

// X_{ij} = {x in W_i : |N1(x) ∩ W_j| < T} for i in 0..k-1, j in L(i).
// X_{1,0} is empty by construction (W_1 avoids Z).
void compute_deficient(const Graph& g1, PartitionState& st, const ParamSet& ps);

// Processes the X_{ij} in lexicographic (i, j) order, ascending vertex id
// within each set. For each deficient x, the T lowest-id available G2
// neighbors are assigned to block j; a vertex is unavailable if it is in B_j
// or already assigned. Returns the stall certificate instead of finishing
// when fewer than T are available.
std::optional<StuckInRepair> repair(const Graph& g2, PartitionState& st,
                                    const ParamSet& ps);

// Assigns the remaining vertices so every block reaches size m while
// avoiding its barred set, via a perfect matching between block slots and
// unassigned vertices (slot of block i ~ x iff x not in B_i). The slot side
// is kept implicit as one adjacency row per block. The seed shuffles the
// right side, selecting among the valid assignments; correctness does not
// depend on it.
std::optional<FillFailure> fill_in(PartitionState& st, const ParamSet& ps,
                                   uint64_t seed);

// Scan check of the property the matching stage relies on: every x in M_i
// has at least T neighbors in M_j under G1 plus the repair edges, for each
// j in L(i). Returns a description of the first violation, or nullopt.
std::optional<std::string> degree_witness_violation(const PartitionState& st,
                                                    const Graph& g1,
                                                    const ParamSet& ps);

}  // namespace comb
