#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

using ComponentId = std::uint32_t;

/// Strongly connected components. Components are numbered by ascending
/// smallest member, and each member list is sorted.
struct SccPartition {
  std::vector<ComponentId> component;
  std::vector<std::vector<NodeIndex>> members;

  [[nodiscard]] std::size_t count() const { return members.size(); }
};

/// Iterative Tarjan; no recursion, so depth is bounded only by memory.
SccPartition compute_sccs(const Graph& g);

/// Quotient DAG with one meta-node per component.
struct CondensationDag {
  std::vector<std::vector<ComponentId>> successors;  // deduplicated, sorted
  std::vector<ComponentId> topological_order;
};

/// Among ready components the one with the smallest member goes first.
CondensationDag condense(const Graph& g, const SccPartition& p);

inline constexpr std::size_t kDefaultPermutationLimit = 9;

/*
  Order of `members` maximizing the weight of forward edges among them; edges
  leaving the member set are ignored. Exhaustive over all |members|! orders,
  evaluated incrementally by depth-first extension with a bound that only
  discards branches unable to beat the best order found so far. Ties go to
  the lexicographically smallest order of dense indices.
  Throws std::invalid_argument when |members| > limit.
*/
std::vector<NodeIndex> best_small_scc_order(const Graph& g, std::span<const NodeIndex> members,
                                            std::size_t limit = kDefaultPermutationLimit);

struct SccBlockOptions {
  std::size_t block_size = 50;
  // Length of the first block; later blocks start at offset + k * block_size.
  // Zero means every block is full-size.
  std::size_t offset = 0;
  std::size_t permutation_limit = kDefaultPermutationLimit;
};

struct SccBlockReport {
  std::size_t largest_scc_size = 0;
  std::size_t blocks = 0;
  std::size_t adopted = 0;
  Weight gain;
};

/// Block-wise reordering inside the largest SCC. A block keeps the set of
/// global ranks it occupies and is adopted only when the total forward weight
/// strictly increases.
SccBlockReport refine_scc_blocks(const Graph& g, Ranking& r, const SccBlockOptions& opts = {});

/// Components in topological order, each ordered exhaustively when small and
/// by `r` otherwise. The result is not gated; callers compare forward weight.
Ranking scc_global_ranking(const Graph& g, const Ranking& r,
                           std::size_t permutation_limit = kDefaultPermutationLimit);

}  // namespace fwrank
