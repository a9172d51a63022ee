#include "comb/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace comb {

BipartiteInstance BipartiteInstance::from_lists(
    std::vector<std::vector<int>> rows, int right_size) {
  BipartiteInstance inst;
  inst.right_ = right_size;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && (row.front() < 0 || row.back() >= right_size))
      throw std::out_of_range("BipartiteInstance: right index out of range");
  }
  inst.row_of_.resize(rows.size());
  std::iota(inst.row_of_.begin(), inst.row_of_.end(), 0);
  inst.rows_ = std::move(rows);
  return inst;
}

BipartiteInstance BipartiteInstance::grouped(
    const std::vector<int>& multiplicity, std::vector<std::vector<int>> group_rows,
    int right_size) {
  if (multiplicity.size() != group_rows.size())
    throw std::invalid_argument("BipartiteInstance::grouped: size mismatch");
  BipartiteInstance inst;
  inst.right_ = right_size;
  for (auto& row : group_rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && (row.front() < 0 || row.back() >= right_size))
      throw std::out_of_range("BipartiteInstance: right index out of range");
  }
  inst.rows_ = std::move(group_rows);
  for (size_t g = 0; g < multiplicity.size(); ++g) {
    if (multiplicity[g] < 0)
      throw std::invalid_argument("BipartiteInstance::grouped: negative multiplicity");
    inst.row_of_.insert(inst.row_of_.end(), static_cast<size_t>(multiplicity[g]),
                        static_cast<int>(g));
  }
  return inst;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const BipartiteInstance& inst;
  int nl, nr;
  std::vector<int> pair_l, pair_r, dist;

  explicit HopcroftKarp(const BipartiteInstance& i)
      : inst(i),
        nl(i.left_size()),
        nr(i.right_size()),
        pair_l(static_cast<size_t>(nl), -1),
        pair_r(static_cast<size_t>(nr), -1),
        dist(static_cast<size_t>(nl), kInf) {}

  bool bfs() {
    std::vector<int> queue;
    queue.reserve(static_cast<size_t>(nl));
    for (int u = 0; u < nl; ++u) {
      if (pair_l[static_cast<size_t>(u)] < 0) {
        dist[static_cast<size_t>(u)] = 0;
        queue.push_back(u);
      } else {
        dist[static_cast<size_t>(u)] = kInf;
      }
    }
    bool reached_free = false;
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int v : inst.neighbors(u)) {
        int w = pair_r[static_cast<size_t>(v)];
        if (w < 0) {
          reached_free = true;
        } else if (dist[static_cast<size_t>(w)] == kInf) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
          queue.push_back(w);
        }
      }
    }
    return reached_free;
  }

  bool dfs(int u) {
    for (int v : inst.neighbors(u)) {
      int w = pair_r[static_cast<size_t>(v)];
      if (w < 0 || (dist[static_cast<size_t>(w)] == dist[static_cast<size_t>(u)] + 1 && dfs(w))) {
        pair_l[static_cast<size_t>(u)] = v;
        pair_r[static_cast<size_t>(v)] = u;
        return true;
      }
    }
    dist[static_cast<size_t>(u)] = kInf;
    return false;
  }

  int run() {
    // Greedy seeding cuts the number of phases on the near-complete
    // instances the fill-in phase produces.
    int size = 0;
    for (int u = 0; u < nl; ++u) {
      for (int v : inst.neighbors(u)) {
        if (pair_r[static_cast<size_t>(v)] < 0) {
          pair_l[static_cast<size_t>(u)] = v;
          pair_r[static_cast<size_t>(v)] = u;
          ++size;
          break;
        }
      }
    }
    while (bfs()) {
      for (int u = 0; u < nl; ++u)
        if (pair_l[static_cast<size_t>(u)] < 0 && dfs(u)) ++size;
    }
    return size;
  }
};

// Left vertices reachable from `start` (unmatched) by alternating paths:
// free edge to the right, matching edge back to the left. When no augmenting
// path exists this set A has N(A) exactly the matched partners of A \ {start},
// so |N(A)| = |A| - 1 and A is a Hall violator.
std::vector<int> hall_violator_from(const BipartiteInstance& inst,
                                    const std::vector<int>& pair_r, int start) {
  std::vector<char> seen_l(static_cast<size_t>(inst.left_size()), 0);
  std::vector<char> seen_r(static_cast<size_t>(inst.right_size()), 0);
  std::vector<int> queue{start};
  seen_l[static_cast<size_t>(start)] = 1;
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int v : inst.neighbors(u)) {
      if (seen_r[static_cast<size_t>(v)]) continue;
      seen_r[static_cast<size_t>(v)] = 1;
      int w = pair_r[static_cast<size_t>(v)];
      if (w >= 0 && !seen_l[static_cast<size_t>(w)]) {
        seen_l[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

}  // namespace

MatchingOutcome max_matching(const BipartiteInstance& inst) {
  HopcroftKarp hk(inst);
  MatchingOutcome out;
  out.size = hk.run();
  out.pair_left = std::move(hk.pair_l);
  out.pair_right = std::move(hk.pair_r);
  out.perfect = out.size == inst.left_size();
  if (!out.perfect) {
    int unmatched = -1;
    for (int u = 0; u < inst.left_size(); ++u) {
      if (out.pair_left[static_cast<size_t>(u)] < 0) {
        unmatched = u;
        break;
      }
    }
    out.violator = hall_violator_from(inst, out.pair_right, unmatched);
  }
  return out;
}

std::vector<MatchingOutcome> block_matchings(
    const Graph& g, const std::vector<std::vector<int>>& blocks) {
  if (blocks.empty()) return {};
  const size_t m = blocks.front().size();
  for (const auto& b : blocks)
    if (b.size() != m)
      throw std::invalid_argument("block_matchings: blocks must have equal size");

  std::vector<MatchingOutcome> out;
  out.reserve(blocks.size() - 1);
  std::vector<int> pos(static_cast<size_t>(g.vertex_count()), -1);
  for (size_t i = 1; i < blocks.size(); ++i) {
    const auto& left = blocks[i - 1];
    const auto& right = blocks[i];
    for (size_t j = 0; j < right.size(); ++j) pos[static_cast<size_t>(right[j])] = static_cast<int>(j);
    std::vector<std::vector<int>> rows(left.size());
    for (size_t j = 0; j < left.size(); ++j) {
      g.neighbors(left[j]).for_each([&](int v) {
        if (pos[static_cast<size_t>(v)] >= 0) rows[j].push_back(pos[static_cast<size_t>(v)]);
      });
    }
    for (size_t j = 0; j < right.size(); ++j) pos[static_cast<size_t>(right[j])] = -1;
    out.push_back(max_matching(
        BipartiteInstance::from_lists(std::move(rows), static_cast<int>(right.size()))));
  }
  return out;
}

}  // namespace comb
