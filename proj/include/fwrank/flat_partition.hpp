#pragma once

#include <cstddef>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

inline constexpr std::size_t kMaxArity = 8;

/// Rank interval [start, end] (inclusive) cut into arity^level groups.
struct PartitionConfig {
  std::size_t arity = 4;
  std::size_t level = 1;
  Rank start = 0;
  Rank end = 0;
};

/// Throws std::invalid_argument for arity outside [2, 8], level 0, or start > end.
void validate(const PartitionConfig& cfg);

/// Level giving groups of roughly `target_group` nodes over `interval_size` ranks.
std::size_t default_level(std::size_t interval_size, std::size_t arity, std::size_t target_group = 64);

/// Config covering every rank of an n-node ranking with default level.
PartitionConfig whole_ranking_config(std::size_t n, std::size_t arity = 4);

/// Nodes at ranks [start, end] in rank order, split into arity^level
/// contiguous groups; the first (count mod groups) groups hold one extra node.
/// Some groups are empty when the interval has fewer nodes than groups.
/// Throws std::invalid_argument when the interval falls outside the ranking.
std::vector<std::vector<NodeIndex>> partition_interval(const Ranking& r, const PartitionConfig& cfg);

struct WindowChoice {
  std::vector<std::size_t> order;  // permutation of window group indices
  Weight gain;                     // forward weight gained over the identity
};

/*
  W[i][j] is the weight of edges from group i to group j of the window, and a
  group order (g_1..g_x) scores sum_{i<j} W[g_i][g_j]. All x! orders are
  enumerated lexicographically from the identity and the first maximum wins,
  so ties keep the identity and otherwise the lexicographically smallest order.
  `group_of[v]` is v's window-local group, or any value >= groups.size() for
  nodes outside the window.
*/
WindowChoice best_window_permutation(const Graph& g, const std::vector<std::vector<NodeIndex>>& groups,
                                     const std::vector<std::uint32_t>& group_of);

/// Convenience overload that builds its own group lookup.
WindowChoice best_window_permutation(const Graph& g, const std::vector<std::vector<NodeIndex>>& groups);

struct FlatReport {
  std::size_t windows = 0;
  std::size_t reordered = 0;
  Weight gain;
};

/*
  Walks non-overlapping windows of `arity` consecutive groups (empty groups
  dropped) and rewrites a window as its best group order. Groups keep their
  internal rank order and the window keeps the ranks it occupied, so ranks
  outside the interval never change.
*/
FlatReport flat_partition_reorder(const Graph& g, Ranking& r, const PartitionConfig& cfg);

}  // namespace fwrank
