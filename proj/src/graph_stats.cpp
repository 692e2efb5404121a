#include "fwrank/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "fwrank/scc.hpp"

namespace fwrank {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

GraphStats compute_stats(const Graph& g) {
  GraphStats s;
  const std::size_t n = g.node_count();
  s.node_count = n;
  s.edge_count = g.edge_count();
  if (n == 0) return s;

  std::vector<std::size_t> degree(n);
  for (NodeIndex v = 0; v < n; ++v) degree[v] = g.out_arcs(v).size() + g.in_arcs(v).size();
  s.avg_degree = 2.0 * static_cast<double>(s.edge_count) / static_cast<double>(n);
  s.max_degree = *std::max_element(degree.begin(), degree.end());
  std::sort(degree.begin(), degree.end());
  s.median_degree = n % 2 == 1 ? static_cast<double>(degree[n / 2])
                               : 0.5 * static_cast<double>(degree[n / 2 - 1] + degree[n / 2]);
  if (n >= 2) {
    s.density = static_cast<double>(s.edge_count) / (static_cast<double>(n) * static_cast<double>(n - 1));
  }

  DisjointSets sets(n);
  std::size_t components = n;
  g.for_each_edge([&](const Edge& e) {
    if (sets.unite(e.source, e.target)) --components;
  });
  s.wcc_count = components;

  const SccPartition sccs = compute_sccs(g);
  s.scc_count = sccs.count();
  s.avg_scc_size = static_cast<double>(n) / static_cast<double>(s.scc_count);
  for (const auto& m : sccs.members) {
    s.largest_scc_size = std::max(s.largest_scc_size, m.size());
    if (m.size() == 1) ++s.singleton_scc_count;
  }

  if (s.edge_count > 0) {
    const WeightScale scale = g.scale();
    double lo = 0, hi = 0, sum = 0;
    bool first = true;
    g.for_each_edge([&](const Edge& e) {
      const double w = scale.to_real(e.weight);
      lo = first ? w : std::min(lo, w);
      hi = first ? w : std::max(hi, w);
      sum += w;
      first = false;
    });
    s.weight_min = lo;
    s.weight_max = hi;
    s.weight_mean = sum / static_cast<double>(s.edge_count);
    double sq = 0;
    g.for_each_edge([&](const Edge& e) {
      const double d = scale.to_real(e.weight) - s.weight_mean;
      sq += d * d;
    });
    s.weight_std = std::sqrt(sq / static_cast<double>(s.edge_count));
  }
  return s;
}

void print_stats(std::ostream& out, const GraphStats& s) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "nodes:               " << s.node_count << '\n'
      << "edges:               " << s.edge_count << '\n'
      << "average degree:      " << s.avg_degree << " (in " << s.avg_degree / 2 << ", out "
      << s.avg_degree / 2 << ")\n"
      << "maximum degree:      " << s.max_degree << '\n'
      << "median degree:       " << s.median_degree << '\n';
  out.precision(6);
  out << "density:             " << s.density << '\n';
  out.precision(2);
  out << "weak components:     " << s.wcc_count << '\n'
      << "strong components:   " << s.scc_count << '\n'
      << "average SCC size:    " << s.avg_scc_size << '\n'
      << "largest SCC:         " << s.largest_scc_size << '\n'
      << "singleton SCCs:      " << s.singleton_scc_count << '\n'
      << "weight range:        " << s.weight_min << " to " << s.weight_max << '\n'
      << "weight mean (std):   " << s.weight_mean << " (" << s.weight_std << ")\n";
  out.flags(flags);
  out.precision(prec);
}

}  // namespace fwrank
