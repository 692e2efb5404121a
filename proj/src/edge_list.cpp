#include "fwrank/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "fwrank/errors.hpp"

namespace fwrank {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

void split(std::string_view line, char delim, std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

std::optional<std::size_t> as_position(const std::string& col) {
  if (col.empty() || !std::all_of(col.begin(), col.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  std::size_t v = 0;
  std::from_chars(col.data(), col.data() + col.size(), v);
  return v;
}

struct Columns {
  std::size_t source = 0;
  std::size_t target = 1;
  std::size_t weight = 2;
  std::size_t width = 3;
};

std::size_t resolve(const std::string& col, const std::vector<std::string_view>& header,
                    std::size_t fallback, bool have_header) {
  if (auto p = as_position(col)) return *p;
  if (have_header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == col) return i;
    }
    throw ValidationError("line 1: column '" + col + "' not found in header");
  }
  const CsvFormat defaults;
  if (col == defaults.source_column || col == defaults.target_column || col == defaults.weight_column) {
    return fallback;
  }
  throw ValidationError("column '" + col + "' given by name but the input has no header");
}

struct IdTable {
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, NodeIndex, Hash, std::equal_to<>> index;
  std::vector<std::string> ids;

  NodeIndex intern(std::string_view id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    const auto v = static_cast<NodeIndex>(ids.size());
    ids.emplace_back(id);
    index.emplace(ids.back(), v);
    return v;
  }
};

}  // namespace

void set_columns(CsvFormat& fmt, const std::string& spec) {
  std::vector<std::string_view> parts;
  split(spec, ',', parts);
  if (parts.size() != 3 || std::any_of(parts.begin(), parts.end(), [](auto p) { return p.empty(); })) {
    throw ValidationError("column spec must name three columns (source,target,weight): '" + spec + "'");
  }
  fmt.source_column = parts[0];
  fmt.target_column = parts[1];
  fmt.weight_column = parts[2];
}

Graph load_edge_list(std::istream& in, const CsvFormat& fmt) {
  IdTable table;
  std::vector<Edge> edges;
  std::vector<std::string_view> fields;
  std::string line;
  std::size_t line_no = 0;
  std::optional<Columns> cols;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) continue;
    split(view, fmt.delimiter, fields);
    const std::string where = "line " + std::to_string(line_no) + ": ";

    if (!cols) {
      bool header = fmt.header == HeaderMode::Present;
      if (fmt.header == HeaderMode::Auto) {
        // A first row whose weight field is not a number is a header.
        Columns probe;
        probe.weight = as_position(fmt.weight_column).value_or(2);
        Weight w;
        header = probe.weight >= fields.size() || !fmt.scale.parse(fields[probe.weight], w);
      }
      Columns c;
      c.source = resolve(fmt.source_column, fields, 0, header);
      c.target = resolve(fmt.target_column, fields, 1, header);
      c.weight = resolve(fmt.weight_column, fields, 2, header);
      c.width = fields.size();
      if (std::max({c.source, c.target, c.weight}) >= c.width) {
        throw ValidationError(where + "expected at least " +
                              std::to_string(std::max({c.source, c.target, c.weight}) + 1) + " columns");
      }
      cols = c;
      if (header) continue;
    }

    if (fields.size() != cols->width) {
      throw ValidationError(where + "expected " + std::to_string(cols->width) + " columns, found " +
                            std::to_string(fields.size()));
    }
    const std::string_view src = fields[cols->source];
    const std::string_view dst = fields[cols->target];
    if (src.empty() || dst.empty()) throw ValidationError(where + "empty node id");
    Weight w;
    if (!fmt.scale.parse(fields[cols->weight], w)) {
      throw ValidationError(where + "cannot parse weight '" + std::string(fields[cols->weight]) + "'");
    }
    if (w < Weight{0}) {
      throw ValidationError(where + "negative weight '" + std::string(fields[cols->weight]) + "'");
    }
    const NodeIndex s = table.intern(src);
    const NodeIndex t = table.intern(dst);
    edges.push_back({s, t, w});
  }
  if (in.bad()) throw IoError("read error while loading edge list");
  if (edges.empty()) throw ValidationError("no edges");
  return Graph::from_edges(std::move(table.ids), std::move(edges), fmt.scale);
}

Graph load_edge_list(const std::filesystem::path& path, const CsvFormat& fmt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open edge list '" + path.string() + "'");
  return load_edge_list(in, fmt);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "from,to,weight\n";
  const WeightScale scale = g.scale();
  g.for_each_edge([&](const Edge& e) {
    out << g.external_id(e.source) << ',' << g.external_id(e.target) << ',' << scale.format(e.weight)
        << '\n';
  });
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write edge list '" + path.string() + "'");
  write_edge_list(out, g);
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

}  // namespace fwrank
