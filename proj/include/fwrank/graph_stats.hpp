#pragma once

#include <cstddef>
#include <iosfwd>

#include "fwrank/graph.hpp"

namespace fwrank {

/// Descriptive statistics of a graph. A node's degree is its number of
/// incident edges (in + out, after parallel-edge merging); weights are in real units and the
/// standard deviation is the population one. Density is |E| / (n (n - 1)), or
/// zero below two nodes.
struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double avg_degree = 0;
  std::size_t max_degree = 0;
  double median_degree = 0;
  double density = 0;
  std::size_t wcc_count = 0;
  std::size_t scc_count = 0;
  double avg_scc_size = 0;
  std::size_t largest_scc_size = 0;
  std::size_t singleton_scc_count = 0;
  double weight_min = 0;
  double weight_max = 0;
  double weight_mean = 0;
  double weight_std = 0;
};

GraphStats compute_stats(const Graph& g);

void print_stats(std::ostream& out, const GraphStats& s);

}  // namespace fwrank
