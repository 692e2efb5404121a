#include "fwrank/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "fwrank/errors.hpp"
#include "fwrank/flat_partition.hpp"
#include "fwrank/greedy.hpp"
#include "fwrank/local_refine.hpp"
#include "fwrank/ranking_io.hpp"
#include "fwrank/scc.hpp"
#include "json.hpp"

namespace fwrank {
namespace {

using Json = nlohmann::json;

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
  void str(std::string_view s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  [[nodiscard]] std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::size_t as_count(const StageSpec& s, const std::string& key, std::size_t fallback) {
  auto it = s.params.find(key);
  if (it == s.params.end()) return fallback;
  std::size_t v = 0;
  const auto& t = it->second;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ValidationError("stage " + s.name + ": parameter " + key + " must be a non-negative integer, got '" +
                          t + "'");
  }
  return v;
}

void allow_only(const StageSpec& s, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : s.params) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) throw ValidationError("stage " + s.name + ": unknown parameter '" + k + "'");
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("write error on '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "': " + ec.message());
}

Json history_json(const std::vector<HistoryEntry>& history) {
  Json arr = Json::array();
  for (const auto& h : history) {
    arr.push_back({{"stage", h.stage},
                   {"sweep", h.sweep},
                   {"forward_weight_units", h.forward_weight.units},
                   {"best_units", h.best.units},
                   {"improved", h.improved}});
  }
  return arr;
}

}  // namespace

StageSpec StageSpec::parse(const std::string& text) {
  StageSpec s;
  const auto colon = text.find(':');
  s.name = text.substr(0, colon);
  while (!s.name.empty() && s.name.back() == ' ') s.name.pop_back();
  while (!s.name.empty() && s.name.front() == ' ') s.name.erase(0, 1);
  if (s.name.empty()) throw ValidationError("empty stage name in '" + text + "'");
  if (colon == std::string::npos) return s;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ValidationError("stage parameter must be key=value: '" + item + "'");
      }
      s.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

std::string StageSpec::to_string() const {
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep;
    out += k + "=" + v;
    sep = ',';
  }
  return out;
}

std::vector<StageSpec> parse_stage_list(const std::string& text) {
  std::vector<StageSpec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const std::string item = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (item.find_first_not_of(' ') != std::string::npos) out.push_back(StageSpec::parse(item));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {"greedy", "refine", "scc-blocks", "flat", "scc-global"};
  return names;
}

void apply_stage(const StageSpec& stage, const Graph& g, Ranking& r, std::uint64_t seed) {
  if (stage.name == "greedy") {
    allow_only(stage, {"seed"});
    GreedyOptions opts;
    opts.seed = as_count(stage, "seed", seed);
    r = greedy_rank(g, opts);
  } else if (stage.name == "refine") {
    allow_only(stage, {"max_block"});
    RefineOptions opts;
    opts.max_block = as_count(stage, "max_block", opts.max_block);
    refine_ranking(g, r, opts);
  } else if (stage.name == "scc-blocks") {
    allow_only(stage, {"block_size", "offset", "perm_limit"});
    SccBlockOptions opts;
    opts.block_size = as_count(stage, "block_size", opts.block_size);
    opts.permutation_limit = as_count(stage, "perm_limit", opts.permutation_limit);
    auto it = stage.params.find("offset");
    opts.offset = it != stage.params.end() && it->second == "half" ? opts.block_size / 2
                                                                     : as_count(stage, "offset", 0);
    if (opts.block_size < 2) throw ValidationError("scc-blocks: block_size must be at least 2");
    refine_scc_blocks(g, r, opts);
  } else if (stage.name == "flat") {
    allow_only(stage, {"arity", "level", "start", "end"});
    if (g.node_count() == 0) return;
    PartitionConfig cfg = whole_ranking_config(g.node_count(), as_count(stage, "arity", 4));
    cfg.start = static_cast<Rank>(as_count(stage, "start", cfg.start));
    cfg.end = static_cast<Rank>(std::min<std::size_t>(as_count(stage, "end", cfg.end), g.node_count() - 1));
    auto it = stage.params.find("level");
    if (it == stage.params.end() || it->second == "auto") {
      if (cfg.start <= cfg.end) cfg.level = default_level(cfg.end - cfg.start + 1, cfg.arity);
    } else {
      cfg.level = as_count(stage, "level", 1);
    }
    try {
      validate(cfg);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("flat: ") + e.what());
    }
    flat_partition_reorder(g, r, cfg);
  } else if (stage.name == "scc-global") {
    allow_only(stage, {"perm_limit"});
    r = scc_global_ranking(g, r, as_count(stage, "perm_limit", kDefaultPermutationLimit));
  } else {
    throw ValidationError("unknown stage '" + stage.name + "'");
  }
}

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig cfg;
  cfg.seed_stages = {StageSpec{"greedy", {}}};
  cfg.sweep = parse_stage_list("refine;scc-blocks:offset=0;scc-blocks:offset=half;flat:arity=4;scc-global");
  return cfg;
}

void PipelineConfig::validate() const {
  const auto& names = stage_names();
  for (const auto* list : {&seed_stages, &sweep}) {
    for (const auto& s : *list) {
      if (std::find(names.begin(), names.end(), s.name) == names.end()) {
        throw ValidationError("unknown stage '" + s.name + "'");
      }
    }
  }
  if (max_sweeps == 0) throw ValidationError("max_sweeps must be positive");
  if (time_budget_seconds && !(*time_budget_seconds > 0)) throw ValidationError("time budget must be positive");
}

std::string PipelineConfig::canonical() const {
  std::string s = "seed=" + std::to_string(seed) + ";max_sweeps=" + std::to_string(max_sweeps) + ";seed_stages=";
  for (const auto& st : seed_stages) s += st.to_string() + "|";
  s += ";sweep=";
  for (const auto& st : sweep) s += st.to_string() + "|";
  return s;
}

std::uint64_t graph_fingerprint(const Graph& g) {
  Fnv1a h;
  h.u64(static_cast<std::uint64_t>(g.scale().digits));
  h.u64(g.node_count());
  for (const auto& id : g.external_ids()) h.str(id);
  g.for_each_edge([&](const Edge& e) {
    h.u64(e.source);
    h.u64(e.target);
    h.u64(static_cast<std::uint64_t>(e.weight.units));
  });
  return h.value();
}

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint) {
  std::filesystem::path p = checkpoint;
  p += ".json";
  return p;
}

PipelineResult run_pipeline(const Graph& g, const PipelineConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto out_of_time = [&] {
    if (!cfg.time_budget_seconds) return false;
    return std::chrono::duration<double>(Clock::now() - started).count() >= *cfg.time_budget_seconds;
  };

  const std::string graph_hash = hex(graph_fingerprint(g));
  Fnv1a config_hasher;
  config_hasher.str(cfg.canonical());
  const std::string config_hash = hex(config_hasher.value());

  PipelineResult result;
  std::optional<Ranking> best;
  Weight best_fw;

  if (cfg.checkpoint && std::filesystem::exists(*cfg.checkpoint)) {
    const auto side = sidecar_path(*cfg.checkpoint);
    std::ifstream in(side);
    if (!in) throw IoError("checkpoint sidecar '" + side.string() + "' is missing");
    Json meta;
    try {
      in >> meta;
    } catch (const Json::exception& e) {
      throw ValidationError("checkpoint sidecar is not valid JSON: " + std::string(e.what()));
    }
    if (meta.value("graph_hash", std::string{}) != graph_hash) {
      throw ValidationError("checkpoint was written for a different graph");
    }
    Ranking loaded = read_ranking(*cfg.checkpoint, g);
    best_fw = forward_weight(g, loaded);
    if (best_fw.units != meta.value("forward_weight_units", std::int64_t{-1})) {
      throw ValidationError("checkpoint ranking does not match its recorded forward weight");
    }
    best = std::move(loaded);
    result.resumed = true;
    if (meta.contains("history")) {
      for (const auto& h : meta["history"]) {
        result.history.push_back({h.at("stage").get<std::string>(), h.at("sweep").get<std::size_t>(),
                                  Weight{h.at("forward_weight_units").get<std::int64_t>()},
                                  Weight{h.at("best_units").get<std::int64_t>()}, h.at("improved").get<bool>()});
      }
    }
  }

  auto persist = [&] {
    if (!cfg.checkpoint) return;
    write_ranking_atomic(*cfg.checkpoint, g, *best);
    Json meta = {{"forward_weight_units", best_fw.units},
                 {"total_weight_units", g.total_weight().units},
                 {"precision_digits", g.scale().digits},
                 {"graph_hash", graph_hash},
                 {"config_hash", config_hash},
                 {"history", history_json(result.history)}};
    write_text_atomic(sidecar_path(*cfg.checkpoint), meta.dump(2) + "\n");
  };

  auto run = [&](const StageSpec& stage, std::size_t sweep) {
    Ranking candidate = best ? *best : Ranking::identity(g.node_count());
    apply_stage(stage, g, candidate, cfg.seed);
    const Weight fw = forward_weight(g, candidate);
    const bool improved = !best || fw > best_fw;
    if (improved) {
      best = std::move(candidate);
      best_fw = fw;
    }
    result.history.push_back({stage.to_string(), sweep, fw, best_fw, improved});
    if (improved) persist();
    return improved;
  };

  for (const auto& stage : cfg.seed_stages) {
    run(stage, 0);
    if (out_of_time()) break;
  }
  if (!best) {
    best = Ranking::identity(g.node_count());
    best_fw = forward_weight(g, *best);
    persist();
  }
  if (!out_of_time()) {
    for (std::size_t sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
      bool any = false;
      bool stop = false;
      for (const auto& stage : cfg.sweep) {
        any = run(stage, sweep) || any;
        if (out_of_time()) {
          stop = true;
          break;
        }
      }
      result.sweeps = sweep;
      if (stop || !any) break;
    }
  }

  result.ranking = std::move(*best);
  result.metrics = back_edge_report(g, result.ranking);
  return result;
}

}  // namespace fwrank
