#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fwrank/edge_list.hpp"
#include "fwrank/errors.hpp"
#include "fwrank/flat_partition.hpp"
#include "fwrank/graph_stats.hpp"
#include "fwrank/greedy.hpp"
#include "fwrank/local_refine.hpp"
#include "fwrank/metrics.hpp"
#include "fwrank/oracle.hpp"
#include "fwrank/pipeline.hpp"
#include "fwrank/ranking_io.hpp"
#include "fwrank/scc.hpp"
#include "json.hpp"

namespace fwrank::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Globals {
  std::string input;
  std::vector<std::string> rankings;
  std::string output;
  std::uint64_t seed = 0;
  int precision = 2;
  std::string format_cols = "from,to,weight";
  std::string header = "auto";
};

Graph load(const Globals& gl) {
  if (gl.input.empty()) throw ValidationError("--input is required");
  CsvFormat fmt;
  set_columns(fmt, gl.format_cols);
  fmt.scale.digits = gl.precision;
  if (gl.header == "yes") fmt.header = HeaderMode::Present;
  else if (gl.header == "no") fmt.header = HeaderMode::Absent;
  else if (gl.header != "auto") throw ValidationError("--header must be auto, yes or no");
  return load_edge_list(fs::path(gl.input), fmt);
}

Ranking load_one_ranking(const Globals& gl, const Graph& g) {
  if (gl.rankings.size() != 1) throw ValidationError("exactly one --ranking is required");
  return read_ranking(fs::path(gl.rankings.front()), g);
}

void save(const Globals& gl, const Graph& g, const Ranking& r) {
  if (gl.output.empty()) throw ValidationError("--output is required");
  write_ranking_atomic(fs::path(gl.output), g, r);
}

std::string ratio_text(double ratio) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << ratio << " (" << std::setprecision(4) << ratio << ")";
  return s.str();
}

void print_transition(std::ostream& out, const Graph& g, Weight before, Weight after) {
  const double total = static_cast<double>(g.total_weight().units);
  auto ratio = [&](Weight w) { return total == 0 ? 1.0 : static_cast<double>(w.units) / total; };
  out << "forward weight: " << g.scale().format(before) << " -> " << g.scale().format(after) << '\n'
      << "forward ratio:  " << ratio_text(ratio(before)) << " -> " << ratio_text(ratio(after)) << '\n';
}

Json summary_json(const std::optional<Summary>& s) {
  if (!s) return nullptr;
  return {{"min", s->min}, {"max", s->max}, {"mean", s->mean}, {"std", s->std}};
}

Json report_json(const Graph& g, const MetricsReport& m) {
  const WeightScale sc = g.scale();
  return {{"forward_weight", sc.to_real(m.forward_weight)},
          {"forward_weight_units", m.forward_weight.units},
          {"total_weight", sc.to_real(m.total_weight)},
          {"total_weight_units", m.total_weight.units},
          {"backward_weight", sc.to_real(m.backward_weight)},
          {"forward_ratio", m.forward_ratio},
          {"backward_edge_count", m.backward_edge_count},
          {"back_length", summary_json(m.back_length)},
          {"back_weight", summary_json(m.back_weight)},
          {"precision_digits", sc.digits}};
}

void print_report(std::ostream& out, const Graph& g, const MetricsReport& m) {
  const WeightScale sc = g.scale();
  out << "forward weight:   " << sc.format(m.forward_weight) << '\n'
      << "total weight:     " << sc.format(m.total_weight) << '\n'
      << "forward ratio:    " << ratio_text(m.forward_ratio) << '\n'
      << "backward edges:   " << m.backward_edge_count << '\n'
      << "backward weight:  " << sc.format(m.backward_weight) << '\n';
  out << std::fixed << std::setprecision(2);
  if (m.back_length) {
    out << "back length:      min " << m.back_length->min << ", max " << m.back_length->max << ", mean "
        << m.back_length->mean << ", std " << m.back_length->std << '\n';
    out << "back weight:      mean " << m.back_weight->mean << ", std " << m.back_weight->std << '\n';
  } else {
    out << "back length:      none\nback weight:      none\n";
  }
  out << std::defaultfloat;
}

// "-" writes to `out`.
void write_json_file(const std::string& path, const Json& j, std::ostream& out) {
  if (path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted feedback-arc ranking toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--input", gl.input, "edge list CSV");
  app.add_option("--ranking", gl.rankings, "ranking file (repeatable for plot-data)");
  app.add_option("--output", gl.output, "output ranking file, or output directory for plot-data");
  app.add_option("--seed", gl.seed, "random seed");
  app.add_option("--precision", gl.precision, "fractional decimal digits kept for weights")->check(CLI::Range(0, 9));
  app.add_option("--format-cols", gl.format_cols, "source,target,weight columns by header name or position");
  app.add_option("--header", gl.header, "auto, yes or no");

  auto* stats = app.add_subcommand("stats", "describe the graph");
  std::string stats_json;
  stats->add_option("--json", stats_json, "also write the statistics as JSON (- for stdout)");

  auto* greedy = app.add_subcommand("greedy", "adaptive out-over-in greedy ranking");

  auto* refine = app.add_subcommand("refine", "gain-aware backward edge refinement");
  std::size_t max_block = RefineOptions{}.max_block;
  refine->add_option("--max-block", max_block, "longest block scanned for a split");

  auto* blocks = app.add_subcommand("scc-blocks", "block refinement inside the largest SCC");
  SccBlockOptions block_opts;
  blocks->add_option("--block-size", block_opts.block_size)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
  blocks->add_option("--offset", block_opts.offset);
  blocks->add_option("--perm-limit", block_opts.permutation_limit);

  auto* global = app.add_subcommand("scc-global", "SCC topological ranking, kept if it improves");
  std::size_t global_limit = kDefaultPermutationLimit;
  global->add_option("--perm-limit", global_limit);

  auto* flat = app.add_subcommand("flat", "flat partition group reordering");
  std::size_t arity = 4, level = 0;
  std::optional<Rank> start, end;
  flat->add_option("--arity", arity)->check(CLI::Range(std::size_t{2}, kMaxArity));
  flat->add_option("--level", level, "0 picks groups of about 64 nodes");
  flat->add_option("--start", start);
  flat->add_option("--end", end);

  auto* pipeline = app.add_subcommand("pipeline", "greedy seed plus repeated refinement sweeps");
  std::string checkpoint, sweep_text, seed_text = "greedy";
  std::size_t max_sweeps = 50;
  std::optional<double> budget;
  pipeline->add_option("--checkpoint", checkpoint, "best-so-far ranking file (resumed when present)");
  pipeline->add_option("--sweep", sweep_text, "';'-separated stages, e.g. refine;flat:arity=4");
  pipeline->add_option("--seed-stages", seed_text, "stages run once before the sweeps");
  pipeline->add_option("--max-sweeps", max_sweeps);
  pipeline->add_option("--time-budget", budget, "seconds");
  std::string pipeline_json;
  pipeline->add_option("--json", pipeline_json, "write the final metrics as JSON (- for stdout)");

  auto* score = app.add_subcommand("score", "evaluate a ranking");
  std::string score_json;
  score->add_option("--json", score_json, "also write the report as JSON (- for stdout)");

  auto* oracle = app.add_subcommand("oracle", "exact optimum for small graphs");
  std::size_t oracle_limit = kDefaultOracleLimit;
  std::string oracle_mode = "dp";
  oracle->add_option("--limit", oracle_limit);
  oracle->add_option("--mode", oracle_mode, "dp or enumerate");

  auto* plot = app.add_subcommand("plot-data", "back edge length histogram and cumulative CSVs");
  std::size_t bins = 50;
  plot->add_option("--bins", bins)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kValidation;
  }

  try {
    const Graph g = load(gl);
    if (stats->parsed()) {
      const GraphStats s = compute_stats(g);
      print_stats(out, s);
      if (g.dropped_self_loop_weight() > Weight{0}) {
        out << "dropped self-loops: " << g.scale().format(g.dropped_self_loop_weight()) << " weight\n";
      }
      if (!stats_json.empty()) {
        write_json_file(stats_json, {{"node_count", s.node_count}, {"edge_count", s.edge_count},
                                     {"avg_degree", s.avg_degree}, {"max_degree", s.max_degree},
                                     {"median_degree", s.median_degree}, {"density", s.density},
                                     {"wcc_count", s.wcc_count}, {"scc_count", s.scc_count},
                                     {"avg_scc_size", s.avg_scc_size}, {"largest_scc_size", s.largest_scc_size},
                                     {"singleton_scc_count", s.singleton_scc_count},
                                     {"weight_min", s.weight_min}, {"weight_max", s.weight_max},
                                     {"weight_mean", s.weight_mean}, {"weight_std", s.weight_std}},
                        out);
      }
    } else if (greedy->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      GreedyReport rep;
      const Ranking r = greedy_rank(g, {gl.seed, {}}, &rep);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      save(gl, g, r);
      const Weight fw = forward_weight(g, r);
      out << "forward weight: " << g.scale().format(fw) << " of " << g.scale().format(g.total_weight()) << '\n'
          << "forward ratio:  " << ratio_text(forward_ratio(g, r)) << '\n'
          << "heap pops: " << rep.heap_pops << " (stale " << rep.stale_pops << "), shuffled tail "
          << rep.shuffled_tail << ", " << std::fixed << std::setprecision(2) << secs << " s\n";
    } else if (refine->parsed()) {
      Ranking r = load_one_ranking(gl, g);
      const Weight before = forward_weight(g, r);
      RefineOptions opts;
      opts.max_block = max_block;
      const RefineReport rep = refine_ranking(g, r, opts);
      save(gl, g, r);
      print_transition(out, g, before, forward_weight(g, r));
      out << "moves: " << rep.scan_moves << " split, " << rep.fallback_moves << " fallback; rejected "
          << rep.rejected << '\n';
    } else if (blocks->parsed()) {
      Ranking r = load_one_ranking(gl, g);
      const Weight before = forward_weight(g, r);
      const SccBlockReport rep = refine_scc_blocks(g, r, block_opts);
      save(gl, g, r);
      print_transition(out, g, before, forward_weight(g, r));
      out << "largest SCC " << rep.largest_scc_size << " nodes; blocks adopted " << rep.adopted << " of "
          << rep.blocks << '\n';
    } else if (global->parsed()) {
      const Ranking r = load_one_ranking(gl, g);
      const Weight before = forward_weight(g, r);
      const Ranking candidate = scc_global_ranking(g, r, global_limit);
      const Weight after = forward_weight(g, candidate);
      const bool keep = after > before;
      save(gl, g, keep ? candidate : r);
      print_transition(out, g, before, keep ? after : before);
      out << (keep ? "kept SCC ranking\n" : "SCC ranking did not improve; input kept (candidate " +
                                                g.scale().format(after) + ")\n");
    } else if (flat->parsed()) {
      Ranking r = load_one_ranking(gl, g);
      const Weight before = forward_weight(g, r);
      PartitionConfig cfg = whole_ranking_config(g.node_count(), arity);
      if (start) cfg.start = *start;
      if (end) cfg.end = *end;
      if (cfg.end >= g.node_count() || cfg.start > cfg.end) throw ValidationError("flat: invalid rank interval");
      cfg.level = level > 0 ? level : default_level(cfg.end - cfg.start + 1, arity);
      validate(cfg);
      const FlatReport rep = flat_partition_reorder(g, r, cfg);
      save(gl, g, r);
      print_transition(out, g, before, forward_weight(g, r));
      out << "windows reordered " << rep.reordered << " of " << rep.windows << " (level " << cfg.level << ")\n";
    } else if (pipeline->parsed()) {
      PipelineConfig cfg = PipelineConfig::defaults();
      cfg.seed = gl.seed;
      cfg.seed_stages = parse_stage_list(seed_text);
      if (!sweep_text.empty()) cfg.sweep = parse_stage_list(sweep_text);
      cfg.max_sweeps = max_sweeps;
      cfg.time_budget_seconds = budget;
      if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
      const PipelineResult res = run_pipeline(g, cfg);
      if (!gl.output.empty()) save(gl, g, res.ranking);
      for (const auto& h : res.history) {
        out << "sweep " << h.sweep << "  " << std::left << std::setw(28) << h.stage << std::right
            << g.scale().format(h.forward_weight) << (h.improved ? "  *" : "") << '\n';
      }
      out << "sweeps: " << res.sweeps << (res.resumed ? " (resumed)" : "") << '\n';
      print_report(out, g, res.metrics);
      if (!pipeline_json.empty()) write_json_file(pipeline_json, report_json(g, res.metrics), out);
    } else if (score->parsed()) {
      const Ranking r = load_one_ranking(gl, g);
      const MetricsReport m = back_edge_report(g, r);
      print_report(out, g, m);
      if (!score_json.empty()) write_json_file(score_json, report_json(g, m), out);
    } else if (oracle->parsed()) {
      OracleMode mode = OracleMode::SubsetDp;
      if (oracle_mode == "enumerate") mode = OracleMode::Enumerate;
      else if (oracle_mode != "dp") throw ValidationError("--mode must be dp or enumerate");
      OracleResult res;
      try {
        res = exact_optimal_ranking(g, oracle_limit, mode);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      out << "forward weight: " << g.scale().format(res.forward_weight) << " of "
          << g.scale().format(g.total_weight()) << '\n'
          << "optimal orders: " << res.optimal_count << '\n'
          << "order:";
      for (NodeIndex v : res.ranking.order()) out << ' ' << g.external_id(v);
      out << '\n';
      if (!gl.output.empty()) save(gl, g, res.ranking);
    } else if (plot->parsed()) {
      if (gl.rankings.empty()) throw ValidationError("at least one --ranking is required");
      if (gl.output.empty()) throw ValidationError("--output directory is required");
      std::vector<Ranking> rankings;
      std::vector<std::vector<std::uint64_t>> lengths;
      std::uint64_t top = 0;
      for (const auto& p : gl.rankings) {
        rankings.push_back(read_ranking(fs::path(p), g));
        lengths.push_back(back_edge_lengths(g, rankings.back()));
        for (auto len : lengths.back()) top = std::max(top, len);
      }
      fs::create_directories(gl.output);
      std::vector<std::string> used;
      for (std::size_t i = 0; i < rankings.size(); ++i) {
        std::string stem = fs::path(gl.rankings[i]).stem().string();
        if (std::find(used.begin(), used.end(), stem) != used.end()) stem += "_" + std::to_string(i);
        used.push_back(stem);
        const auto d = back_edge_distribution(std::move(lengths[i]), bins,
                                              top > 0 ? std::optional<std::uint64_t>(top) : std::nullopt);
        const fs::path hist = fs::path(gl.output) / (stem + ".histogram.csv");
        const fs::path cum = fs::path(gl.output) / (stem + ".cumulative.csv");
        std::ofstream h(hist), c(cum);
        if (!h || !c) throw IoError("cannot write plot data under '" + gl.output + "'");
        write_histogram_csv(h, d);
        write_cumulative_csv(c, d);
        out << hist.string() << '\n' << cum.string() << '\n';
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

}  // namespace fwrank::cli
