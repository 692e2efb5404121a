#include "fwrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fwrank {
namespace {

__extension__ typedef unsigned __int128 u128;

void check_sizes(const Graph& g, const Ranking& r) {
  if (r.size() != g.node_count()) {
    throw std::invalid_argument("ranking has " + std::to_string(r.size()) + " nodes, graph has " +
                                std::to_string(g.node_count()));
  }
}

template <class Range>
Summary summarize(const Range& xs) {
  Summary s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double sq = 0;
  for (double x : xs) sq += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(xs.size()));
  return s;
}

}  // namespace

Weight forward_weight(const Graph& g, const Ranking& r) {
  check_sizes(g, r);
  const auto pos = r.positions();
  Weight fw;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const Rank pu = pos[u];
    for (const Arc& a : g.out_arcs(u)) {
      if (pu < pos[a.node]) fw += a.weight;
    }
  }
  return fw;
}

double forward_ratio(const Graph& g, const Ranking& r) {
  const Weight fw = forward_weight(g, r);
  if (g.total_weight() == Weight{0}) return 1.0;
  return static_cast<double>(fw.units) / static_cast<double>(g.total_weight().units);
}

std::vector<std::uint64_t> back_edge_lengths(const Graph& g, const Ranking& r) {
  check_sizes(g, r);
  std::vector<std::uint64_t> lengths;
  const auto pos = r.positions();
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    for (const Arc& a : g.out_arcs(u)) {
      if (pos[u] > pos[a.node]) lengths.push_back(pos[u] - pos[a.node]);
    }
  }
  return lengths;
}

MetricsReport back_edge_report(const Graph& g, const Ranking& r) {
  check_sizes(g, r);
  MetricsReport m;
  m.total_weight = g.total_weight();
  const auto pos = r.positions();
  const WeightScale scale = g.scale();
  std::vector<double> lengths;
  std::vector<double> weights;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    for (const Arc& a : g.out_arcs(u)) {
      if (pos[u] < pos[a.node]) {
        m.forward_weight += a.weight;
      } else {
        m.backward_weight += a.weight;
        lengths.push_back(static_cast<double>(pos[u] - pos[a.node]));
        weights.push_back(scale.to_real(a.weight));
      }
    }
  }
  m.backward_edge_count = lengths.size();
  m.forward_ratio = m.total_weight == Weight{0}
                        ? 1.0
                        : static_cast<double>(m.forward_weight.units) /
                              static_cast<double>(m.total_weight.units);
  if (!lengths.empty()) {
    m.back_length = summarize(lengths);
    m.back_weight = summarize(weights);
  }
  return m;
}

BackEdgeDistribution back_edge_distribution(std::vector<std::uint64_t> lengths, std::size_t bin_count,
                                            std::optional<std::uint64_t> max_length) {
  if (bin_count == 0) throw std::invalid_argument("bin_count must be positive");
  BackEdgeDistribution d;
  if (lengths.empty()) return d;
  std::sort(lengths.begin(), lengths.end());
  const std::uint64_t top = max_length.value_or(lengths.back());
  if (top < lengths.back()) throw std::invalid_argument("max_length below the longest back edge");

  // Smallest length falling into bin k is 1 + ceil(k * top / bins).
  const auto bins = static_cast<u128>(bin_count);
  d.histogram.resize(bin_count);
  for (std::size_t k = 0; k < bin_count; ++k) {
    const u128 num = static_cast<u128>(k) * top;
    d.histogram[k].lower = 1 + static_cast<std::uint64_t>((num + bins - 1) / bins);
  }
  for (std::uint64_t len : lengths) {
    const auto k = static_cast<std::size_t>(static_cast<u128>(len - 1) * bins / top);
    ++d.histogram[k].count;
  }
  std::size_t running = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    ++running;
    if (i + 1 == lengths.size() || lengths[i + 1] != lengths[i]) d.cumulative.push_back({lengths[i], running});
  }
  return d;
}

BackEdgeDistribution back_edge_distribution(const Graph& g, const Ranking& r, std::size_t bin_count,
                                            std::optional<std::uint64_t> max_length) {
  return back_edge_distribution(back_edge_lengths(g, r), bin_count, max_length);
}

void write_histogram_csv(std::ostream& out, const BackEdgeDistribution& d) {
  out << "bin_lower,count\n";
  for (const auto& b : d.histogram) out << b.lower << ',' << b.count << '\n';
}

void write_cumulative_csv(std::ostream& out, const BackEdgeDistribution& d) {
  out << "length,cumulative_count\n";
  for (const auto& p : d.cumulative) out << p.length << ',' << p.count << '\n';
}

}  // namespace fwrank
