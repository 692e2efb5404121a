#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

/// Turns a full ordering of external ids into a Ranking. Throws
/// ValidationError listing every duplicate, unknown and missing id.
Ranking validate_ranking(const Graph& g, std::span<const std::string> candidate);

/*
  Reads a ranking file. Two layouts are accepted:
    - one external id per line, first line is rank 0;
    - keyed CSV `node_id,rank` (optional header), ranks distinct integers that
      are sorted to obtain the order.
  Blank lines are ignored.
*/
std::vector<std::string> read_ranking_ids(std::istream& in);
Ranking read_ranking(std::istream& in, const Graph& g);
Ranking read_ranking(const std::filesystem::path& path, const Graph& g);

/// One external id per line, rank 0 first, LF line endings.
void write_ranking(std::ostream& out, const Graph& g, const Ranking& r);

/// Writes through a temporary sibling file and renames it into place.
void write_ranking_atomic(const std::filesystem::path& path, const Graph& g, const Ranking& r);

}  // namespace fwrank
