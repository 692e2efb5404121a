#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fwrank/graph.hpp"

namespace fwrank {

enum class HeaderMode { Auto, Present, Absent };

/// Describes a delimited edge list. A column is named either by header label
/// or by zero-based position (a string of digits).
struct CsvFormat {
  std::string source_column = "from";
  std::string target_column = "to";
  std::string weight_column = "weight";
  HeaderMode header = HeaderMode::Auto;
  char delimiter = ',';
  WeightScale scale;
};

/// Parses "from,to,weight" or "0,1,2" into the three column fields of `fmt`.
/// Throws ValidationError unless exactly three entries are given.
void set_columns(CsvFormat& fmt, const std::string& spec);

/// Reads an edge list. Dense indices follow first appearance of each external
/// id (source column before target column within a row). Self-loops are
/// dropped, parallel edges summed, zero weights kept.
/// Throws ValidationError naming the line for malformed rows, and "no edges"
/// for input without data rows.
Graph load_edge_list(std::istream& in, const CsvFormat& fmt = {});
Graph load_edge_list(const std::filesystem::path& path, const CsvFormat& fmt = {});

/// Writes `from,to,weight` rows in (source index, target index) order.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace fwrank
