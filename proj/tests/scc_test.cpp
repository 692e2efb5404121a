#include "fwrank/scc.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fwrank/metrics.hpp"
#include "test_support.hpp"

namespace fwrank {
namespace {

using test::id;
using test::names_of;
using test::order_of;

Graph g3_plus_d() { return test::parse("a,b,5\nb,c,3\nc,a,10\nc,d,1\n"); }

// Transitive closure by repeated relaxation, independent of Tarjan.
std::vector<std::vector<bool>> reachability(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) reach[v][v] = true;
  g.for_each_edge([&](const Edge& e) { reach[e.source][e.target] = true; });
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

TEST(ComputeSccs, Examples) {
  const SccPartition one = compute_sccs(test::g3());
  ASSERT_EQ(one.count(), 1u);
  EXPECT_EQ(one.members[0].size(), 3u);

  const SccPartition chain = compute_sccs(test::parse("a,b,1\nb,c,1\n"));
  EXPECT_EQ(chain.count(), 3u);

  const Graph g = g3_plus_d();
  const SccPartition p = compute_sccs(g);
  ASSERT_EQ(p.count(), 2u);
  EXPECT_EQ(p.members[0], (std::vector<NodeIndex>{0, 1, 2}));
  EXPECT_EQ(p.members[1], (std::vector<NodeIndex>{id(g, "d")}));
}

TEST(ComputeSccs, MatchesMutualReachability) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 1 + rng() % 12, .density = 0.05 + 0.3 * (trial % 4) / 3.0});
    const auto reach = reachability(g);
    const SccPartition p = compute_sccs(g);
    for (NodeIndex a = 0; a < g.node_count(); ++a) {
      for (NodeIndex b = 0; b < g.node_count(); ++b) {
        ASSERT_EQ(p.component[a] == p.component[b], reach[a][b] && reach[b][a]);
      }
    }
  }
}

TEST(ComputeSccs, DeepChainDoesNotRecurse) {
  const std::size_t n = 200000;
  std::vector<Edge> edges;
  for (NodeIndex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, Weight{1}});
  edges.push_back({static_cast<NodeIndex>(n - 1), 0, Weight{1}});
  const SccPartition p = compute_sccs(Graph::from_edges(n, std::move(edges)));
  EXPECT_EQ(p.count(), 1u);
}

TEST(Condense, Examples) {
  const Graph g = g3_plus_d();
  const SccPartition p = compute_sccs(g);
  const CondensationDag dag = condense(g, p);
  EXPECT_EQ(dag.successors[0], (std::vector<ComponentId>{1}));
  EXPECT_TRUE(dag.successors[1].empty());
  EXPECT_EQ(dag.topological_order, (std::vector<ComponentId>{0, 1}));

  const Graph edgeless = Graph::from_edges(3, {});
  const CondensationDag e = condense(edgeless, compute_sccs(edgeless));
  EXPECT_EQ(e.topological_order, (std::vector<ComponentId>{0, 1, 2}));

  // Components {0,1} and {2,3} joined by five parallel cross edges.
  std::vector<Edge> edges{{0, 1, Weight{1}}, {1, 0, Weight{1}}, {2, 3, Weight{1}}, {3, 2, Weight{1}}};
  for (NodeIndex a : {0u, 1u}) {
    for (NodeIndex b : {2u, 3u}) edges.push_back({a, b, Weight{1}});
  }
  edges.push_back({0, 2, Weight{4}});
  const Graph two = Graph::from_edges(4, edges);
  const CondensationDag d = condense(two, compute_sccs(two));
  EXPECT_EQ(d.successors[0], (std::vector<ComponentId>{1}));
}

TEST(Condense, TopologicalOrderRespectsEveryEdge) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 30, .density = 0.04});
    const SccPartition p = compute_sccs(g);
    const CondensationDag dag = condense(g, p);
    std::vector<std::size_t> pos(p.count());
    for (std::size_t k = 0; k < dag.topological_order.size(); ++k) pos[dag.topological_order[k]] = k;
    g.for_each_edge([&](const Edge& e) {
      if (p.component[e.source] != p.component[e.target]) {
        EXPECT_LT(pos[p.component[e.source]], pos[p.component[e.target]]);
      }
    });
  }
}

TEST(BestSmallSccOrder, Examples) {
  const Graph g = test::g3();
  const NodeIndex all[] = {0, 1, 2};
  const auto order = best_small_scc_order(g, all);
  EXPECT_EQ(order, (std::vector<NodeIndex>{id(g, "c"), id(g, "a"), id(g, "b")}));

  const NodeIndex single[] = {1};
  EXPECT_EQ(best_small_scc_order(g, single), (std::vector<NodeIndex>{1}));

  const Graph two = test::parse("u,v,3\nv,u,8\n");
  const NodeIndex uv[] = {0, 1};
  EXPECT_EQ(best_small_scc_order(two, uv), (std::vector<NodeIndex>{id(two, "v"), id(two, "u")}));

  EXPECT_THROW(best_small_scc_order(g, all, 2), std::invalid_argument);
}

std::int64_t internal_fw(const Graph& g, const std::vector<NodeIndex>& order) {
  std::int64_t fw = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) fw += g.weight(order[i], order[j]).units;
  }
  return fw;
}

TEST(BestSmallSccOrder, MatchesBruteForce) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 12, .density = 0.4});
    std::vector<NodeIndex> pool(12);
    std::iota(pool.begin(), pool.end(), NodeIndex{0});
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % 7);
    const auto order = best_small_scc_order(g, pool);
    ASSERT_EQ(order.size(), pool.size());
    EXPECT_TRUE(std::is_permutation(order.begin(), order.end(), pool.begin()));
    EXPECT_EQ(internal_fw(g, order), test::brute_force_best(g, pool));
  }
}

TEST(BestSmallSccOrder, TiesGoToLexicographicallySmallest) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 6, .density = 0.3, .min_weight = 1, .max_weight = 2});
    std::vector<NodeIndex> nodes{0, 1, 2, 3, 4, 5};
    const std::int64_t best = test::brute_force_best(g, nodes);
    std::vector<NodeIndex> first;
    do {
      if (internal_fw(g, nodes) == best) {
        first = nodes;
        break;
      }
    } while (std::next_permutation(nodes.begin(), nodes.end()));
    const NodeIndex all[] = {0, 1, 2, 3, 4, 5};
    EXPECT_EQ(best_small_scc_order(g, all), first);
  }
}

TEST(RefineSccBlocks, ThreeCycleSingleBlock) {
  const Graph g = test::g3();
  Ranking r = order_of(g, {"a", "b", "c"});
  const SccBlockReport rep = refine_scc_blocks(g, r, {.block_size = 3});
  EXPECT_EQ(names_of(g, r), (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(rep.adopted, 1u);
  EXPECT_EQ(rep.gain, Weight{700});
  EXPECT_EQ(rep.largest_scc_size, 3u);
}

TEST(RefineSccBlocks, OptimalBlocksAreKept) {
  const Graph g = test::g3();
  Ranking r = order_of(g, {"c", "a", "b"});
  const SccBlockReport rep = refine_scc_blocks(g, r, {.block_size = 3});
  EXPECT_EQ(names_of(g, r), (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(rep.adopted, 0u);
}

TEST(RefineSccBlocks, EdgelessBlockUnchanged) {
  const Graph g = Graph::from_edges(6, {});
  Ranking r = Ranking::identity(6);
  refine_scc_blocks(g, r, {.block_size = 2});
  EXPECT_EQ(r, Ranking::identity(6));
  EXPECT_THROW(refine_scc_blocks(g, r, {.block_size = 1}), std::invalid_argument);
}

TEST(RefineSccBlocks, MonotoneAndConfinedToLargestScc) {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 5 + rng() % 40, .density = 0.06 + 0.02 * (trial % 5)});
    Ranking r = test::random_ranking(rng, g.node_count());
    const Ranking before = r;
    const SccBlockOptions opts{.block_size = 2 + rng() % 12, .offset = rng() % 7, .permutation_limit = 6};
    const SccBlockReport rep = refine_scc_blocks(g, r, opts);
    ASSERT_GE(test::naive_fw(g, r), test::naive_fw(g, before));
    ASSERT_EQ(test::naive_fw(g, r) - test::naive_fw(g, before), rep.gain.units);
    const SccPartition p = compute_sccs(g);
    std::size_t largest = 0;
    for (std::size_t c = 0; c < p.count(); ++c) {
      if (p.members[c].size() > p.members[largest].size()) largest = c;
    }
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (p.component[v] != largest) EXPECT_EQ(r.position(v), before.position(v));
    }
  }
}

TEST(SccGlobalRanking, PendantExample) {
  const Graph g = g3_plus_d();
  const Ranking out = scc_global_ranking(g, order_of(g, {"d", "a", "b", "c"}));
  EXPECT_EQ(names_of(g, out), (std::vector<std::string>{"c", "a", "b", "d"}));
  EXPECT_EQ(forward_weight(g, out), Weight{1600});
  EXPECT_EQ(g.total_weight(), Weight{1900});
}

TEST(SccGlobalRanking, DagGivesRatioOne) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = test::random_dag(rng, 30, 0.15);
    const Ranking out = scc_global_ranking(g, test::random_ranking(rng, 30));
    EXPECT_EQ(forward_ratio(g, out), 1.0);
    EXPECT_EQ(forward_weight(g, out), g.total_weight());
  }
}

TEST(SccGlobalRanking, LargeSingleSccKeepsInputOrder) {
  std::vector<Edge> cycle;
  for (NodeIndex v = 0; v < 12; ++v) cycle.push_back({v, (v + 1) % 12, Weight{100 + v}});
  const Graph g = Graph::from_edges(12, cycle);
  std::mt19937_64 rng(103);
  const Ranking r = test::random_ranking(rng, 12);
  EXPECT_EQ(scc_global_ranking(g, r), r);
}

TEST(SccGlobalRanking, OptimalWhenEveryComponentIsSmall) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 8, .density = 0.2});
    const Ranking out = scc_global_ranking(g, test::random_ranking(rng, 8));
    EXPECT_EQ(test::naive_fw(g, out), test::brute_force_best(g));
  }
}

}  // namespace
}  // namespace fwrank
