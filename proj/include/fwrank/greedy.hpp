#pragma once

#include <cstdint>
#include <functional>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

struct GreedyOptions {
  std::uint64_t seed = 0;
  // Test hook: nodes rejected here get no initial heap entry. A node that is
  // never rescored then never reaches the heap and lands in the shuffled tail.
  std::function<bool(NodeIndex)> initial_heap_filter;
};

struct GreedyReport {
  std::size_t heap_pops = 0;
  std::size_t stale_pops = 0;
  std::size_t shuffled_tail = 0;
};

/*
  Adaptive out-over-in greedy ordering.

  Every unranked node u carries score(u) = (out(u) + 1) / (in(u) + 1), where
  out/in are the weights of its edges to and from nodes still unranked and
  "+1" is one whole weight unit on the graph's scale. The node with the
  highest score is ranked next; ranking it lowers the residual in-weight of
  its successors and the residual out-weight of its predecessors, which are
  rescored and pushed again. Scores are compared exactly by cross
  multiplication; equal scores go to the smaller node index. Pops of ranked
  nodes or of superseded scores are skipped. Nodes that never come off the
  heap are appended in seeded random order.
*/
Ranking greedy_rank(const Graph& g, const GreedyOptions& opts = {}, GreedyReport* report = nullptr);

}  // namespace fwrank
