#include "fwrank/flat_partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fwrank {

void validate(const PartitionConfig& cfg) {
  if (cfg.arity < 2 || cfg.arity > kMaxArity) throw std::invalid_argument("arity must be in [2, 8]");
  if (cfg.level < 1) throw std::invalid_argument("level must be at least 1");
  if (cfg.start > cfg.end) throw std::invalid_argument("empty rank interval");
  double groups = std::pow(static_cast<double>(cfg.arity), static_cast<double>(cfg.level));
  if (groups > 1e9) throw std::invalid_argument("arity^level is too large");
}

std::size_t default_level(std::size_t interval_size, std::size_t arity, std::size_t target_group) {
  if (interval_size <= target_group * arity) return 1;
  const double ideal = std::log(static_cast<double>(interval_size) / static_cast<double>(target_group)) /
                       std::log(static_cast<double>(arity));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(ideal)));
}

PartitionConfig whole_ranking_config(std::size_t n, std::size_t arity) {
  PartitionConfig cfg;
  cfg.arity = arity;
  cfg.level = default_level(n, arity);
  cfg.start = 0;
  cfg.end = n == 0 ? 0 : static_cast<Rank>(n - 1);
  return cfg;
}

std::vector<std::vector<NodeIndex>> partition_interval(const Ranking& r, const PartitionConfig& cfg) {
  validate(cfg);
  if (cfg.end >= r.size()) throw std::invalid_argument("rank interval exceeds ranking");
  std::size_t groups = 1;
  for (std::size_t i = 0; i < cfg.level; ++i) groups *= cfg.arity;
  const std::size_t count = static_cast<std::size_t>(cfg.end - cfg.start) + 1;
  const std::size_t base = count / groups;
  const std::size_t extra = count % groups;

  std::vector<std::vector<NodeIndex>> out(groups);
  Rank next = cfg.start;
  for (std::size_t i = 0; i < groups; ++i) {
    const std::size_t size = base + (i < extra ? 1 : 0);
    out[i].reserve(size);
    for (std::size_t k = 0; k < size; ++k) out[i].push_back(r.at(next++));
  }
  return out;
}

WindowChoice best_window_permutation(const Graph& g, const std::vector<std::vector<NodeIndex>>& groups,
                                     const std::vector<std::uint32_t>& group_of) {
  const std::size_t x = groups.size();
  if (x > kMaxArity) throw std::invalid_argument("window has more than 8 groups");
  std::vector<std::int64_t> w(x * x, 0);
  for (std::size_t i = 0; i < x; ++i) {
    for (NodeIndex node : groups[i]) {
      for (const Arc& a : g.out_arcs(node)) {
        const std::uint32_t j = group_of[a.node];
        if (j < x && j != i) w[i * x + j] += a.weight.units;
      }
    }
  }
  auto score = [&](const std::vector<std::size_t>& order) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x; ++i) {
      for (std::size_t j = i + 1; j < x; ++j) s += w[order[i] * x + order[j]];
    }
    return s;
  };

  std::vector<std::size_t> perm(x);
  std::iota(perm.begin(), perm.end(), 0);
  WindowChoice best{perm, Weight{0}};
  const std::int64_t identity = score(perm);
  std::int64_t best_score = identity;
  while (std::next_permutation(perm.begin(), perm.end())) {
    const std::int64_t s = score(perm);
    if (s > best_score) {
      best_score = s;
      best.order = perm;
    }
  }
  best.gain = Weight{best_score - identity};
  return best;
}

WindowChoice best_window_permutation(const Graph& g, const std::vector<std::vector<NodeIndex>>& groups) {
  std::vector<std::uint32_t> group_of(g.node_count(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (NodeIndex v : groups[i]) group_of[v] = static_cast<std::uint32_t>(i);
  }
  return best_window_permutation(g, groups, group_of);
}

FlatReport flat_partition_reorder(const Graph& g, Ranking& r, const PartitionConfig& cfg) {
  if (r.size() != g.node_count()) throw std::invalid_argument("ranking does not match graph");
  const auto groups = partition_interval(r, cfg);
  FlatReport report;
  constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> group_of(g.node_count(), kOutside);

  for (std::size_t first = 0; first < groups.size(); first += cfg.arity) {
    std::vector<std::vector<NodeIndex>> window;
    for (std::size_t i = first; i < first + cfg.arity && i < groups.size(); ++i) {
      if (!groups[i].empty()) window.push_back(groups[i]);
    }
    if (window.size() < 2) continue;
    ++report.windows;
    for (std::size_t i = 0; i < window.size(); ++i) {
      for (NodeIndex v : window[i]) group_of[v] = static_cast<std::uint32_t>(i);
    }
    const WindowChoice choice = best_window_permutation(g, window, group_of);
    for (const auto& grp : window) {
      for (NodeIndex v : grp) group_of[v] = kOutside;
    }
    if (choice.gain <= Weight{0}) continue;

    // Groups in the window are contiguous in rank and already rank-sorted.
    const Rank base = r.position(window.front().front());
    std::vector<NodeIndex> nodes;
    for (std::size_t gi : choice.order) nodes.insert(nodes.end(), window[gi].begin(), window[gi].end());
    r.assign_interval(base, nodes);
    ++report.reordered;
    report.gain += choice.gain;
  }
  return report;
}

}  // namespace fwrank
