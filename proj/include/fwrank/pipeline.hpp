#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/metrics.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

/// A pass name plus its parameters, written `name` or `name:key=value,key=value`.
struct StageSpec {
  std::string name;
  std::map<std::string, std::string> params;

  static StageSpec parse(const std::string& text);
  [[nodiscard]] std::string to_string() const;
};

/// Parses a `;`-separated list of stage specs.
std::vector<StageSpec> parse_stage_list(const std::string& text);

/// Registered stage names: greedy, refine, scc-blocks, flat, scc-global.
const std::vector<std::string>& stage_names();

/*
  Runs one stage on `r` in place. Parameters:
    greedy      seed (defaults to `seed`)
    refine      max_block=2000
    scc-blocks  block_size=50 offset=0|half|<n> perm_limit=9
    flat        arity=4 level=auto|<n> start=0 end=last
    scc-global  perm_limit=9
  Throws ValidationError for unknown stages or parameters.
*/
void apply_stage(const StageSpec& stage, const Graph& g, Ranking& r, std::uint64_t seed);

struct PipelineConfig {
  std::vector<StageSpec> seed_stages;
  std::vector<StageSpec> sweep;
  std::size_t max_sweeps = 50;
  std::optional<double> time_budget_seconds;
  std::uint64_t seed = 0;
  // Best ranking is kept here, with a `.json` sidecar next to it.
  std::optional<std::filesystem::path> checkpoint;

  /// greedy, then sweeps of refine, scc-blocks at offsets 0 and half a block,
  /// flat with arity 4, scc-global.
  static PipelineConfig defaults();

  /// Throws ValidationError on unknown stages or non-positive budgets.
  void validate() const;
  [[nodiscard]] std::string canonical() const;
};

struct HistoryEntry {
  std::string stage;
  std::size_t sweep = 0;  // 0 for seed stages
  Weight forward_weight;  // of the stage's output
  Weight best;            // best so far after this stage
  bool improved = false;
};

struct PipelineResult {
  Ranking ranking;
  MetricsReport metrics;
  std::vector<HistoryEntry> history;
  std::size_t sweeps = 0;
  bool resumed = false;
};

/*
  Seed stages run first, then the sweep repeats until a full sweep brings no
  improvement, max_sweeps is reached, or the time budget runs out (checked
  between stages). Each stage starts from the best ranking so far; its output
  replaces the best only when the exact forward weight strictly increases,
  and the new best is then written atomically to the checkpoint. An existing
  checkpoint is validated against the graph and used as the starting best.
*/
PipelineResult run_pipeline(const Graph& g, const PipelineConfig& cfg);

/// FNV-1a over precision, node ids and edges; stable across platforms.
std::uint64_t graph_fingerprint(const Graph& g);

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint);

}  // namespace fwrank
