#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

/// Sum of w(u,v) over edges with position(u) < position(v).
/// Throws std::invalid_argument if the ranking does not cover the graph.
Weight forward_weight(const Graph& g, const Ranking& r);

/// forward_weight / total_weight, or 1.0 for a graph without weight.
double forward_ratio(const Graph& g, const Ranking& r);

/// Population summary of a sample.
struct Summary {
  double min = 0;
  double max = 0;
  double mean = 0;
  double std = 0;
};

struct MetricsReport {
  Weight forward_weight;
  Weight backward_weight;
  Weight total_weight;
  double forward_ratio = 1.0;
  std::size_t backward_edge_count = 0;
  // Absent when there are no backward edges. Lengths are rank distances
  // position(u) - position(v); weights are in real units.
  std::optional<Summary> back_length;
  std::optional<Summary> back_weight;
};

MetricsReport back_edge_report(const Graph& g, const Ranking& r);

/// Rank distance of every backward edge, in edge order.
std::vector<std::uint64_t> back_edge_lengths(const Graph& g, const Ranking& r);

struct HistogramBin {
  std::uint64_t lower = 0;
  std::size_t count = 0;
};

struct CumulativePoint {
  std::uint64_t length = 0;
  std::size_t count = 0;
};

struct BackEdgeDistribution {
  std::vector<HistogramBin> histogram;
  std::vector<CumulativePoint> cumulative;
};

/*
  Equal-width histogram of back-edge lengths over [1, max_length] plus the
  cumulative count at every distinct length. Length L lands in bin
  floor((L - 1) * bins / max_length). `max_length` defaults to the longest
  back edge; passing a shared value keeps several rankings comparable.
  No backward edges gives empty series.
*/
BackEdgeDistribution back_edge_distribution(const Graph& g, const Ranking& r, std::size_t bin_count,
                                            std::optional<std::uint64_t> max_length = std::nullopt);
BackEdgeDistribution back_edge_distribution(std::vector<std::uint64_t> lengths, std::size_t bin_count,
                                            std::optional<std::uint64_t> max_length = std::nullopt);

/// `bin_lower,count` rows.
void write_histogram_csv(std::ostream& out, const BackEdgeDistribution& d);
/// `length,cumulative_count` rows.
void write_cumulative_csv(std::ostream& out, const BackEdgeDistribution& d);

}  // namespace fwrank
