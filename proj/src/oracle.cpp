#include "fwrank/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fwrank {
namespace {

using Matrix = std::vector<std::int64_t>;

Matrix dense_weights(const Graph& g) {
  const std::size_t n = g.node_count();
  Matrix w(n * n, 0);
  g.for_each_edge([&](const Edge& e) { w[e.source * n + e.target] = e.weight.units; });
  return w;
}

OracleResult enumerate(const Graph& g) {
  const std::size_t n = g.node_count();
  const Matrix w = dense_weights(g);
  std::vector<NodeIndex> perm(n);
  std::iota(perm.begin(), perm.end(), NodeIndex{0});
  std::vector<NodeIndex> best = perm;
  std::int64_t best_fw = -1;
  std::uint64_t count = 0;
  do {
    std::int64_t fw = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) fw += w[perm[i] * n + perm[j]];
    }
    if (fw > best_fw) {
      best_fw = fw;
      best = perm;
      count = 1;
    } else if (fw == best_fw) {
      ++count;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {Ranking::from_order(std::move(best)), Weight{best_fw}, count};
}

OracleResult subset_dp(const Graph& g) {
  const std::size_t n = g.node_count();
  const std::size_t full = (std::size_t{1} << n) - 1;
  const Matrix w = dense_weights(g);

  // into[x][P] would be 2^n * n words; instead recompute w(P -> x) from the
  // lowest set bit: gain(P, x) = gain(P - low, x) + w(low, x).
  std::vector<std::int64_t> gain((full + 1) * n, 0);
  for (std::size_t p = 1; p <= full; ++p) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(p));
    const std::size_t rest = p & (p - 1);
    for (std::size_t x = 0; x < n; ++x) gain[p * n + x] = gain[rest * n + x] + w[low * n + x];
  }

  std::vector<std::int64_t> best(full + 1, 0);
  std::vector<std::uint64_t> ways(full + 1, 0);
  ways[full] = 1;
  for (std::size_t p = full; p-- > 0;) {
    std::int64_t b = -1;
    std::uint64_t c = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (p & (std::size_t{1} << x)) continue;
      const std::size_t next = p | (std::size_t{1} << x);
      const std::int64_t val = gain[p * n + x] + best[next];
      if (val > b) {
        b = val;
        c = ways[next];
      } else if (val == b) {
        c += ways[next];
      }
    }
    best[p] = b;
    ways[p] = c;
  }

  std::vector<NodeIndex> order;
  order.reserve(n);
  std::size_t p = 0;
  while (p != full) {
    for (std::size_t x = 0; x < n; ++x) {
      if (p & (std::size_t{1} << x)) continue;
      const std::size_t next = p | (std::size_t{1} << x);
      if (gain[p * n + x] + best[next] == best[p]) {
        order.push_back(static_cast<NodeIndex>(x));
        p = next;
        break;
      }
    }
  }
  return {Ranking::from_order(std::move(order)), Weight{n == 0 ? 0 : best[0]}, ways[0]};
}

}  // namespace

OracleResult exact_optimal_ranking(const Graph& g, std::size_t node_limit, OracleMode mode) {
  const std::size_t n = g.node_count();
  const std::size_t cap = mode == OracleMode::Enumerate ? 12 : 20;
  if (n > node_limit || n > cap) {
    throw std::invalid_argument("oracle limited to " + std::to_string(std::min(node_limit, cap)) +
                                " nodes, graph has " + std::to_string(n));
  }
  if (n == 0) return {Ranking{}, Weight{0}, 1};
  return mode == OracleMode::Enumerate ? enumerate(g) : subset_dp(g);
}

}  // namespace fwrank
