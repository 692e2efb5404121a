#include "fwrank/ranking_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <system_error>

#include "fwrank/errors.hpp"

namespace fwrank {
namespace {

constexpr std::size_t kListedOffenders = 20;

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size() && i < kListedOffenders; ++i) {
    if (i) s += ", ";
    s += '"' + ids[i] + '"';
  }
  if (ids.size() > kListedOffenders) s += ", ... (" + std::to_string(ids.size()) + " total)";
  return s;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

Ranking validate_ranking(const Graph& g, std::span<const std::string> candidate) {
  std::vector<NodeIndex> order;
  order.reserve(candidate.size());
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::string> duplicates;
  std::vector<std::string> unknown;
  for (const std::string& id : candidate) {
    const auto v = g.find_node(id);
    if (!v) {
      unknown.push_back(id);
      continue;
    }
    if (seen[*v]) {
      if (std::find(duplicates.begin(), duplicates.end(), id) == duplicates.end()) duplicates.push_back(id);
      continue;
    }
    seen[*v] = true;
    order.push_back(*v);
  }
  std::vector<std::string> missing;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (!seen[v]) missing.push_back(g.external_id(v));
  }
  if (!duplicates.empty() || !unknown.empty() || !missing.empty()) {
    std::string msg = "invalid ranking:";
    if (!duplicates.empty()) msg += " duplicate " + join_ids(duplicates) + ";";
    if (!unknown.empty()) msg += " unknown " + join_ids(unknown) + ";";
    if (!missing.empty()) msg += " missing " + join_ids(missing) + ";";
    msg.pop_back();
    throw ValidationError(msg);
  }
  return Ranking::from_order(std::move(order));
}

std::vector<std::string> read_ranking_ids(std::istream& in) {
  std::vector<std::string> plain;
  std::vector<std::pair<long long, std::string>> keyed;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_lines = 0;
  bool is_keyed = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = strip(line);
    if (view.empty()) continue;
    const std::size_t comma = view.find(',');
    if (data_lines == 0 && plain.empty() && keyed.empty()) is_keyed = comma != std::string_view::npos;
    if (is_keyed != (comma != std::string_view::npos)) {
      throw ValidationError("ranking line " + std::to_string(line_no) + ": mixed plain and keyed rows");
    }
    if (!is_keyed) {
      plain.emplace_back(view);
      ++data_lines;
      continue;
    }
    const std::string_view id = strip(view.substr(0, comma));
    const std::string_view rank_text = strip(view.substr(comma + 1));
    long long rank = 0;
    const auto res = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (res.ec != std::errc{} || res.ptr != rank_text.data() + rank_text.size()) {
      if (data_lines == 0 && keyed.empty()) continue;  // header row
      throw ValidationError("ranking line " + std::to_string(line_no) + ": cannot parse rank '" +
                            std::string(rank_text) + "'");
    }
    keyed.emplace_back(rank, std::string(id));
    ++data_lines;
  }
  if (in.bad()) throw IoError("read error while loading ranking");
  if (!is_keyed) return plain;

  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i - 1].first) {
      throw ValidationError("ranking: rank " + std::to_string(keyed[i].first) + " assigned to both \"" +
                            keyed[i - 1].second + "\" and \"" + keyed[i].second + "\"");
    }
  }
  std::vector<std::string> ids;
  ids.reserve(keyed.size());
  for (auto& [rank, id] : keyed) ids.push_back(std::move(id));
  return ids;
}

Ranking read_ranking(std::istream& in, const Graph& g) {
  const auto ids = read_ranking_ids(in);
  return validate_ranking(g, ids);
}

Ranking read_ranking(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ranking '" + path.string() + "'");
  return read_ranking(in, g);
}

void write_ranking(std::ostream& out, const Graph& g, const Ranking& r) {
  for (NodeIndex v : r.order()) out << g.external_id(v) << '\n';
}

void write_ranking_atomic(const std::filesystem::path& path, const Graph& g, const Ranking& r) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    write_ranking(out, g, r);
    out.flush();
    if (!out) throw IoError("write error on '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

}  // namespace fwrank
