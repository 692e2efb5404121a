#include "fwrank/metrics.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_support.hpp"

namespace fwrank {
namespace {

using test::g3;
using test::order_of;

TEST(ForwardWeight, ThreeCycleOrders) {
  const Graph g = g3();
  EXPECT_EQ(forward_weight(g, order_of(g, {"a", "b", "c"})), Weight{800});
  EXPECT_EQ(forward_weight(g, order_of(g, {"c", "a", "b"})), Weight{1500});
  EXPECT_EQ(test::brute_force_best(g), 1500);
  EXPECT_NEAR(forward_ratio(g, order_of(g, {"c", "a", "b"})), 15.0 / 18.0, 1e-15);
}

TEST(ForwardWeight, EmptyGraph) {
  const Graph g = Graph::from_edges(0, {});
  EXPECT_EQ(forward_weight(g, Ranking::identity(0)), Weight{0});
  EXPECT_EQ(forward_ratio(g, Ranking::identity(0)), 1.0);
}

TEST(ForwardWeight, SizeMismatchThrows) {
  EXPECT_THROW(forward_weight(g3(), Ranking::identity(2)), std::invalid_argument);
}

TEST(ForwardWeight, MatchesNaiveSum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 20, .density = 0.2});
    const Ranking r = test::random_ranking(rng, g.node_count());
    EXPECT_EQ(forward_weight(g, r).units, test::naive_fw(g, r));
  }
}

TEST(ForwardWeight, ReversalIdentity) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 12, .density = 0.4});
    const Ranking r = test::random_ranking(rng, g.node_count());
    EXPECT_EQ(forward_weight(g, r) + forward_weight(g, r.reversed()), g.total_weight());
  }
}

TEST(ForwardRatio, TopologicalOrderOfDagIsOne) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = test::random_dag(rng, 15, 0.3);
    EXPECT_EQ(forward_ratio(g, Ranking::from_order(test::naive_topological_order(g))), 1.0);
  }
}

TEST(BackEdgeReport, SingleBackwardEdge) {
  const Graph g = g3();
  const MetricsReport m = back_edge_report(g, order_of(g, {"a", "b", "c"}));
  EXPECT_EQ(m.backward_edge_count, 1u);
  EXPECT_EQ(m.backward_weight, Weight{1000});
  EXPECT_EQ(m.forward_weight + m.backward_weight, m.total_weight);
  ASSERT_TRUE(m.back_length.has_value());
  EXPECT_EQ(m.back_length->min, 2.0);
  EXPECT_EQ(m.back_length->max, 2.0);
  EXPECT_EQ(m.back_length->mean, 2.0);
  EXPECT_EQ(m.back_length->std, 0.0);
  ASSERT_TRUE(m.back_weight.has_value());
  EXPECT_EQ(m.back_weight->mean, 10.0);
}

TEST(BackEdgeReport, DagHasNoBackStatistics) {
  const Graph g = test::parse("a,b,1\nb,c,2\n");
  const MetricsReport m = back_edge_report(g, Ranking::identity(3));
  EXPECT_EQ(m.backward_edge_count, 0u);
  EXPECT_FALSE(m.back_length.has_value());
  EXPECT_FALSE(m.back_weight.has_value());
  EXPECT_EQ(m.forward_ratio, 1.0);
}

TEST(BackEdgeReport, PopulationStd) {
  // Back edges of lengths 1 and 3 with weights 2 and 6 under the identity.
  const Graph g = Graph::from_edges(4, {{1, 0, Weight{200}}, {3, 0, Weight{600}}, {1, 2, Weight{100}}});
  const MetricsReport m = back_edge_report(g, Ranking::identity(4));
  ASSERT_EQ(m.backward_edge_count, 2u);
  EXPECT_EQ(m.back_length->mean, 2.0);
  EXPECT_EQ(m.back_length->std, 1.0);
  EXPECT_EQ(m.back_weight->mean, 4.0);
  EXPECT_EQ(m.back_weight->std, 2.0);
  EXPECT_EQ(m.back_weight->min, 2.0);
  EXPECT_EQ(m.back_weight->max, 6.0);
}

TEST(BackEdgeDistribution, ThreeCycleSingleEdge) {
  const Graph g = g3();
  const BackEdgeDistribution d = back_edge_distribution(g, order_of(g, {"a", "b", "c"}), 2);
  ASSERT_EQ(d.histogram.size(), 2u);
  EXPECT_EQ(d.histogram[0].lower, 1u);
  EXPECT_EQ(d.histogram[1].lower, 2u);
  EXPECT_EQ(d.histogram[0].count, 0u);
  EXPECT_EQ(d.histogram[1].count, 1u);
  ASSERT_EQ(d.cumulative.size(), 1u);
  EXPECT_EQ(d.cumulative.back().length, 2u);
  EXPECT_EQ(d.cumulative.back().count, 1u);
}

TEST(BackEdgeDistribution, DagGivesEmptySeries) {
  const Graph g = test::parse("a,b,1\n");
  const BackEdgeDistribution d = back_edge_distribution(g, Ranking::identity(2), 10);
  EXPECT_TRUE(d.histogram.empty());
  EXPECT_TRUE(d.cumulative.empty());
  std::ostringstream h, c;
  write_histogram_csv(h, d);
  write_cumulative_csv(c, d);
  EXPECT_EQ(h.str(), "bin_lower,count\n");
  EXPECT_EQ(c.str(), "length,cumulative_count\n");
}

TEST(BackEdgeDistribution, LengthsOneAndHundred) {
  const BackEdgeDistribution d = back_edge_distribution(std::vector<std::uint64_t>{100, 1}, 2);
  ASSERT_EQ(d.histogram.size(), 2u);
  EXPECT_EQ(d.histogram[0].count, 1u);
  EXPECT_EQ(d.histogram[1].count, 1u);
  EXPECT_EQ(d.histogram[1].lower, 51u);
  ASSERT_EQ(d.cumulative.size(), 2u);
  EXPECT_EQ(d.cumulative[0].count, 1u);
  EXPECT_EQ(d.cumulative[1].count, 2u);
  std::ostringstream h;
  write_histogram_csv(h, d);
  EXPECT_EQ(h.str(), "bin_lower,count\n1,1\n51,1\n");
}

TEST(BackEdgeDistribution, BinsCoverEveryBackwardEdge) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 30, .density = 0.2});
    const Ranking r = test::random_ranking(rng, g.node_count());
    const std::size_t bins = 1 + rng() % 17;
    const auto lengths = back_edge_lengths(g, r);
    const BackEdgeDistribution d = back_edge_distribution(g, r, bins);
    std::size_t total = 0;
    for (const auto& b : d.histogram) total += b.count;
    EXPECT_EQ(total, lengths.size());
    EXPECT_EQ(total, back_edge_report(g, r).backward_edge_count);
    if (!lengths.empty()) {
      EXPECT_EQ(d.cumulative.back().count, lengths.size());
      // Each length falls in the bin whose lower bound it reaches last.
      for (std::uint64_t len : lengths) {
        std::size_t k = 0;
        while (k + 1 < d.histogram.size() && d.histogram[k + 1].lower <= len) ++k;
        EXPECT_GE(len, d.histogram[k].lower);
      }
    }
  }
}

TEST(BackEdgeDistribution, SharedMaximumAndBadArguments) {
  const BackEdgeDistribution d = back_edge_distribution(std::vector<std::uint64_t>{2}, 4, 8);
  ASSERT_EQ(d.histogram.size(), 4u);
  EXPECT_EQ(d.histogram[0].lower, 1u);
  EXPECT_EQ(d.histogram[1].lower, 3u);
  EXPECT_EQ(d.histogram[0].count, 1u);
  EXPECT_THROW(back_edge_distribution(std::vector<std::uint64_t>{2}, 0), std::invalid_argument);
  EXPECT_THROW(back_edge_distribution(std::vector<std::uint64_t>{9}, 2, 8), std::invalid_argument);
}

}  // namespace
}  // namespace fwrank
