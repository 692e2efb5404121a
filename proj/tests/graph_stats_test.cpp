#include "fwrank/graph_stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"

namespace fwrank {
namespace {

TEST(GraphStats, ThreeCycle) {
  const GraphStats s = compute_stats(test::g3());
  EXPECT_EQ(s.node_count, 3u);
  EXPECT_EQ(s.edge_count, 3u);
  EXPECT_DOUBLE_EQ(s.density, 0.5);
  EXPECT_EQ(s.wcc_count, 1u);
  EXPECT_EQ(s.scc_count, 1u);
  EXPECT_EQ(s.largest_scc_size, 3u);
  EXPECT_EQ(s.singleton_scc_count, 0u);
  EXPECT_DOUBLE_EQ(s.weight_mean, 6.0);
  EXPECT_DOUBLE_EQ(s.weight_min, 3.0);
  EXPECT_DOUBLE_EQ(s.weight_max, 10.0);
  // Population std of {5, 3, 10}.
  EXPECT_NEAR(s.weight_std, std::sqrt(26.0 / 3.0), 1e-12);
  EXPECT_DOUBLE_EQ(s.avg_degree, 2.0);
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_DOUBLE_EQ(s.median_degree, 2.0);
}

TEST(GraphStats, TwoIsolatedEdges) {
  const GraphStats s = compute_stats(test::parse("a,b,1\nc,d,3\n"));
  EXPECT_EQ(s.wcc_count, 2u);
  EXPECT_EQ(s.scc_count, 4u);
  EXPECT_EQ(s.singleton_scc_count, 4u);
  EXPECT_EQ(s.largest_scc_size, 1u);
  EXPECT_DOUBLE_EQ(s.avg_scc_size, 1.0);
  EXPECT_DOUBLE_EQ(s.density, 2.0 / 12.0);
}

TEST(GraphStats, MedianOfEvenCountAveragesMiddlePair) {
  // Degrees: a=3, b=1, c=1, d=1.
  const GraphStats s = compute_stats(test::parse("a,b,1\na,c,1\nd,a,1\n"));
  EXPECT_DOUBLE_EQ(s.median_degree, 1.0);
  EXPECT_EQ(s.max_degree, 3u);
  const GraphStats t = compute_stats(test::parse("a,b,1\nb,c,1\n"));  // 1,2,1
  EXPECT_DOUBLE_EQ(t.median_degree, 1.0);
}

TEST(GraphStats, EmptyGraphIsZeroed) {
  const GraphStats s = compute_stats(Graph::from_edges(0, {}));
  EXPECT_EQ(s.node_count, 0u);
  EXPECT_EQ(s.edge_count, 0u);
  EXPECT_EQ(s.density, 0.0);
  EXPECT_EQ(s.weight_mean, 0.0);
  EXPECT_EQ(s.scc_count, 0u);
  const GraphStats one = compute_stats(test::parse("a,a,7\n"));
  EXPECT_EQ(one.node_count, 1u);
  EXPECT_EQ(one.density, 0.0);
  EXPECT_EQ(one.scc_count, 1u);
}

TEST(GraphStats, PrintsEveryField) {
  std::ostringstream out;
  print_stats(out, compute_stats(test::g3()));
  for (const char* label : {"nodes", "edges", "density", "weak components", "strong components", "largest SCC"}) {
    EXPECT_NE(out.str().find(label), std::string::npos) << label;
  }
}

}  // namespace
}  // namespace fwrank
