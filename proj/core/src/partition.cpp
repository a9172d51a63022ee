#include "comb/partition.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "comb/rng.hpp"

namespace comb {

std::vector<int> block_neighbors(int i, int k) {
  std::vector<int> out;
  if (i - 1 >= 0) out.push_back(i - 1);
  if (i + 1 <= k - 1) out.push_back(i + 1);
  return out;
}

std::vector<std::vector<int>> PartitionState::blocks() const {
  std::vector<std::vector<int>> out(static_cast<size_t>(k));
  out[0] = roots;
  for (size_t i = 1; i < out.size(); ++i) out[i].reserve(static_cast<size_t>(m));
  for (int v = 0; v < n; ++v) {
    int b = assignment[static_cast<size_t>(v)];
    if (b > 0) out[static_cast<size_t>(b)].push_back(v);
  }
  return out;
}

PartitionState first_step(const Graph& g1, const std::vector<int>& roots,
                          const ParamSet& ps, uint64_t seed) {
  const int n = g1.vertex_count();
  if (ps.n != n) throw std::invalid_argument("first_step: graph size != params n");
  if (static_cast<long long>(roots.size()) != ps.m)
    throw std::invalid_argument("first_step: |roots| != m");

  PartitionState st;
  st.n = n;
  st.k = static_cast<int>(ps.k);
  st.m = static_cast<int>(ps.m);
  st.roots = roots;
  st.assignment.assign(static_cast<size_t>(n), -1);
  st.block_count.assign(static_cast<size_t>(st.k), 0);
  st.W.assign(static_cast<size_t>(st.k), Bitset(n));
  st.B.assign(static_cast<size_t>(st.k), Bitset(n));
  st.Z = Bitset(n);

  for (int r : roots) {
    if (r < 0 || r >= n) throw std::invalid_argument("first_step: root out of range");
    if (st.assigned(r)) throw std::invalid_argument("first_step: duplicate root");
    st.assignment[static_cast<size_t>(r)] = 0;
    st.W[0].set(r);
  }
  st.block_count[0] = st.m;

  if (st.k == 1) {
    // Degenerate comb: the paths are the roots themselves.
    st.phase = Phase::filled;
    return st;
  }

  for (int x = 0; x < n; ++x) {
    if (st.assigned(x)) continue;
    if (count_nbrs_in(g1, x, st.W[0]) < ps.T) st.Z.set(x);
  }

  // One uniform draw per non-root vertex, consumed in ascending vertex
  // order, keeps the stream layout independent of Z.
  Rng rng(seed);
  const double slot = ps.alpha / static_cast<double>(st.k);
  for (int x = 0; x < n; ++x) {
    if (st.assigned(x)) {
      continue;
    }
    const int first_block = st.Z.test(x) ? 2 : 1;
    const int eligible = st.k - first_block;
    const double u = rng.next_double();
    if (eligible <= 0) continue;
    if (u < slot * static_cast<double>(eligible)) {
      const int block = first_block + static_cast<int>(u / slot);
      st.assignment[static_cast<size_t>(x)] = block;
      st.W[static_cast<size_t>(block)].set(x);
      ++st.block_count[static_cast<size_t>(block)];
    }
  }

  st.phase = Phase::first_step_done;
  return st;
}

void compute_barred(const Graph& g1, PartitionState& st, const ParamSet& ps) {
  if (st.phase != Phase::first_step_done)
    throw std::logic_error("compute_barred: first step has not run");
  std::vector<char> bad(static_cast<size_t>(st.k));
  for (int x = 0; x < st.n; ++x) {
    if (st.assigned(x)) continue;  // B_i lives on R \ W
    for (int j = 0; j < st.k; ++j)
      bad[static_cast<size_t>(j)] =
          count_nbrs_in(g1, x, st.W[static_cast<size_t>(j)]) < ps.T;
    for (int i = 1; i < st.k; ++i) {
      for (int j : block_neighbors(i, st.k)) {
        if (bad[static_cast<size_t>(j)]) {
          st.B[static_cast<size_t>(i)].set(x);
          break;
        }
      }
    }
  }
  st.barred_computed = true;
}

void compute_deficient(const Graph& g1, PartitionState& st, const ParamSet& ps) {
  if (st.phase != Phase::first_step_done)
    throw std::logic_error("compute_deficient: first step has not run");
  st.X.clear();
  for (int i = 0; i < st.k; ++i) {
    for (int j : block_neighbors(i, st.k)) {
      std::vector<int> deficient;
      st.W[static_cast<size_t>(i)].for_each([&](int x) {
        if (count_nbrs_in(g1, x, st.W[static_cast<size_t>(j)]) < ps.T)
          deficient.push_back(x);
      });
      st.X[{i, j}] = std::move(deficient);
    }
  }
  // W_1 excludes Z, so X_{1,0} cannot be populated.
  assert(st.X[{1, 0}].empty());
  st.deficient_computed = true;
}

std::optional<StuckInRepair> repair(const Graph& g2, PartitionState& st,
                                    const ParamSet& ps) {
  if (!st.barred_computed || !st.deficient_computed)
    throw std::logic_error("repair: barred/deficient sets not computed");

  long long unassigned = 0;
  for (int v = 0; v < st.n; ++v)
    if (!st.assigned(v)) ++unassigned;
  std::vector<long long> barred_unassigned(static_cast<size_t>(st.k), 0);
  for (int i = 1; i < st.k; ++i) {
    st.B[static_cast<size_t>(i)].for_each([&](int v) {
      if (!st.assigned(v)) ++barred_unassigned[static_cast<size_t>(i)];
    });
  }

  auto take_vertex = [&](int v) {
    --unassigned;
    for (int i = 1; i < st.k; ++i)
      if (st.B[static_cast<size_t>(i)].test(v)) --barred_unassigned[static_cast<size_t>(i)];
  };

  for (const auto& [key, xs] : st.X) {
    const int j = key.second;
    if (xs.empty()) continue;
    assert(j >= 1);  // X_{1,0} is the only j=0 pair and it is always empty
    for (int x : xs) {
      const long long avail =
          unassigned - barred_unassigned[static_cast<size_t>(j)];
      if (st.min_repair_avail < 0 || avail < st.min_repair_avail)
        st.min_repair_avail = avail;

      // lowest-id available G2 neighbors first
      std::vector<int> chosen;
      chosen.reserve(static_cast<size_t>(ps.T));
      const Bitset& nbrs = g2.neighbors(x);
      for (int v = 0; v < st.n && static_cast<long long>(chosen.size()) < ps.T; ++v) {
        if (!nbrs.test(v)) continue;
        if (st.assigned(v)) continue;
        if (st.B[static_cast<size_t>(j)].test(v)) continue;
        chosen.push_back(v);
      }
      if (static_cast<long long>(chosen.size()) < ps.T)
        return StuckInRepair{x, j, static_cast<int>(chosen.size())};
      for (int v : chosen) {
        st.assignment[static_cast<size_t>(v)] = j;
        ++st.block_count[static_cast<size_t>(j)];
        st.repair_edges.emplace_back(x, v);
        take_vertex(v);
      }
    }
  }

  st.phase = Phase::repaired;
  return std::nullopt;
}

std::optional<FillFailure> fill_in(PartitionState& st, const ParamSet& ps,
                                   uint64_t seed) {
  if (st.phase != Phase::repaired)
    throw std::logic_error("fill_in: repair has not completed");

  std::vector<int> deficit(static_cast<size_t>(st.k), 0);
  for (int i = 1; i < st.k; ++i) {
    deficit[static_cast<size_t>(i)] = st.m - st.block_count[static_cast<size_t>(i)];
    if (deficit[static_cast<size_t>(i)] < 0) {
      FillFailure f;
      f.kind = FillFailure::Kind::negative_deficit;
      f.block = i;
      return f;
    }
  }

  std::vector<int> unassigned;
  for (int v = 0; v < st.n; ++v)
    if (!st.assigned(v)) unassigned.push_back(v);

  // slot count == vertex count holds by conservation: sum of deficits is
  // n minus everything assigned so far
  long long slot_total = 0;
  for (int i = 1; i < st.k; ++i) slot_total += deficit[static_cast<size_t>(i)];
  assert(slot_total == static_cast<long long>(unassigned.size()));

  // Seeded shuffle picks which of the many valid assignments we take.
  Rng rng(seed);
  for (size_t i = unassigned.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.below(i));
    std::swap(unassigned[i - 1], unassigned[j]);
  }

  std::vector<int> multiplicity;
  std::vector<std::vector<int>> group_rows;
  std::vector<int> group_block;
  for (int i = 1; i < st.k; ++i) {
    if (deficit[static_cast<size_t>(i)] == 0) continue;
    std::vector<int> row;
    for (size_t idx = 0; idx < unassigned.size(); ++idx) {
      if (!st.B[static_cast<size_t>(i)].test(unassigned[idx]))
        row.push_back(static_cast<int>(idx));
    }
    multiplicity.push_back(deficit[static_cast<size_t>(i)]);
    group_rows.push_back(std::move(row));
    group_block.push_back(i);
  }

  auto inst = BipartiteInstance::grouped(multiplicity, std::move(group_rows),
                                         static_cast<int>(unassigned.size()));
  MatchingOutcome mo = max_matching(inst);
  if (!mo.perfect) {
    FillFailure f;
    f.kind = FillFailure::Kind::infeasible;
    f.violator_size = static_cast<int>(mo.violator.size());
    std::vector<int> blocks_hit;
    for (int slot : mo.violator) blocks_hit.push_back(group_block[static_cast<size_t>(inst.group_of(slot))]);
    std::sort(blocks_hit.begin(), blocks_hit.end());
    blocks_hit.erase(std::unique(blocks_hit.begin(), blocks_hit.end()), blocks_hit.end());
    f.violator_blocks = std::move(blocks_hit);
    // |N(A)| = |A| - 1 for the certificate produced by max_matching
    f.right_neighborhood_size = f.violator_size - 1;
    return f;
  }

  for (int slot = 0; slot < inst.left_size(); ++slot) {
    const int idx = mo.pair_left[static_cast<size_t>(slot)];
    const int v = unassigned[static_cast<size_t>(idx)];
    const int block = group_block[static_cast<size_t>(inst.group_of(slot))];
    st.assignment[static_cast<size_t>(v)] = block;
    ++st.block_count[static_cast<size_t>(block)];
  }

  for (int i = 0; i < st.k; ++i)
    assert(st.block_count[static_cast<size_t>(i)] == st.m);
  st.phase = Phase::filled;
  return std::nullopt;
}

std::optional<std::string> degree_witness_violation(const PartitionState& st,
                                                    const Graph& g1,
                                                    const ParamSet& ps) {
  if (st.phase != Phase::filled) return "partition is not filled";
  if (st.k == 1) return std::nullopt;

  std::vector<Bitset> block_bits(static_cast<size_t>(st.k), Bitset(st.n));
  for (int v = 0; v < st.n; ++v) {
    int b = st.assignment[static_cast<size_t>(v)];
    if (b < 0) return "vertex " + std::to_string(v) + " unassigned";
    block_bits[static_cast<size_t>(b)].set(v);
  }

  // Repair edges, both directions, minus those already present in G1 so the
  // union count does not double-count.
  std::vector<std::vector<int>> extra(static_cast<size_t>(st.n));
  for (auto [x, y] : st.repair_edges) {
    if (!g1.has_edge(x, y)) {
      extra[static_cast<size_t>(x)].push_back(y);
      extra[static_cast<size_t>(y)].push_back(x);
    }
  }

  for (int v = 0; v < st.n; ++v) {
    const int i = st.assignment[static_cast<size_t>(v)];
    for (int j : block_neighbors(i, st.k)) {
      long long cnt = count_nbrs_in(g1, v, block_bits[static_cast<size_t>(j)]);
      for (int y : extra[static_cast<size_t>(v)])
        if (block_bits[static_cast<size_t>(j)].test(y)) ++cnt;
      if (cnt < ps.T) {
        return "vertex " + std::to_string(v) + " in block " + std::to_string(i) +
               " has only " + std::to_string(cnt) + " G1+repair neighbors in block " +
               std::to_string(j) + " (need " + std::to_string(ps.T) + ")";
      }
    }
  }
  return std::nullopt;
}

}  // namespace comb
