#pragma once

#include <cstdint>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

enum class OracleMode {
  Enumerate,  // all n! orders, n <= 12
  SubsetDp,   // dynamic program over 2^n placed-prefix sets, n <= 20
};

struct OracleResult {
  Ranking ranking;  // lexicographically smallest optimal order
  Weight forward_weight;
  std::uint64_t optimal_count = 0;
};

inline constexpr std::size_t kDefaultOracleLimit = 10;

/*
  Exact maximum forward weight by exhaustive search.

  SubsetDp: for a set P of nodes already placed at the front, let
    best(P) = max over x not in P of  w(P -> x) + best(P + x),
  with best(V) = 0; w(P -> x) is the weight of edges from P into x, which
  are exactly the forward edges gained by placing x next. best(empty) is the
  optimum, the number of optimal orders is counted along the same recursion,
  and the lexicographically smallest optimum is read off greedily from the
  front. Both modes return identical results.
  Throws std::invalid_argument when node_count exceeds `node_limit` or the mode's
  hard cap.
*/
OracleResult exact_optimal_ranking(const Graph& g, std::size_t node_limit = kDefaultOracleLimit,
                                   OracleMode mode = OracleMode::SubsetDp);

}  // namespace fwrank
