#include "fwrank/pipeline.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fwrank/errors.hpp"
#include "fwrank/greedy.hpp"
#include "fwrank/local_refine.hpp"
#include "fwrank/metrics.hpp"
#include "fwrank/ranking_io.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace fwrank {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("fwrank_pipeline_" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

PipelineConfig stages(const std::string& seed, const std::string& sweep) {
  PipelineConfig cfg;
  cfg.seed_stages = parse_stage_list(seed);
  cfg.sweep = parse_stage_list(sweep);
  return cfg;
}

TEST(StageSpec, ParseAndPrint) {
  const StageSpec s = StageSpec::parse("scc-blocks:block_size=20,offset=half");
  EXPECT_EQ(s.name, "scc-blocks");
  EXPECT_EQ(s.params.at("block_size"), "20");
  EXPECT_EQ(s.params.at("offset"), "half");
  EXPECT_EQ(StageSpec::parse(s.to_string()).params, s.params);
  EXPECT_EQ(parse_stage_list("greedy; refine ;flat:arity=2").size(), 3u);
  EXPECT_THROW(StageSpec::parse("refine:max_block"), ValidationError);
  EXPECT_THROW(StageSpec::parse(":x=1"), ValidationError);
}

TEST(ApplyStage, RejectsUnknownStagesAndParameters) {
  const Graph g = test::g3();
  Ranking r = Ranking::identity(3);
  EXPECT_THROW(apply_stage(StageSpec::parse("anneal"), g, r, 0), ValidationError);
  EXPECT_THROW(apply_stage(StageSpec::parse("refine:depth=3"), g, r, 0), ValidationError);
  EXPECT_THROW(apply_stage(StageSpec::parse("refine:max_block=-1"), g, r, 0), ValidationError);
  EXPECT_THROW(apply_stage(StageSpec::parse("flat:arity=12"), g, r, 0), ValidationError);
  EXPECT_THROW(apply_stage(StageSpec::parse("scc-blocks:block_size=1"), g, r, 0), ValidationError);
  for (const auto& name : stage_names()) EXPECT_NO_THROW(apply_stage(StageSpec::parse(name), g, r, 0)) << name;
}

TEST(PipelineConfig, Validation) {
  PipelineConfig cfg = PipelineConfig::defaults();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.seed_stages.size(), 1u);
  EXPECT_EQ(cfg.sweep.size(), 5u);
  cfg.max_sweeps = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = PipelineConfig::defaults();
  cfg.time_budget_seconds = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = stages("greedy", "polish");
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(RunPipeline, GreedyAloneOnThreeCycle) {
  const Graph g = test::g3();
  const PipelineResult res = run_pipeline(g, stages("greedy", ""));
  EXPECT_EQ(res.metrics.forward_weight, Weight{1500});
  EXPECT_NEAR(res.metrics.forward_ratio, 0.8333, 5e-5);
}

TEST(RunPipeline, SccGlobalOnDag) {
  std::mt19937_64 rng(149);
  const Graph g = test::random_dag(rng, 30, 0.2);
  const PipelineResult res = run_pipeline(g, stages("scc-global", ""));
  EXPECT_EQ(res.metrics.forward_ratio, 1.0);
}

TEST(RunPipeline, GreedyThenRefineOnFourNodes) {
  const Graph g = test::g4();
  const PipelineResult res = run_pipeline(g, stages("greedy;refine", ""));
  EXPECT_GE(res.metrics.forward_weight, Weight{1200});
}

TEST(RunPipeline, DefaultScheduleBeatsSeedAndIsDeterministic) {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = test::random_graph(rng, {.nodes = 10 + rng() % 50, .density = 0.1});
    PipelineConfig cfg = PipelineConfig::defaults();
    cfg.seed = trial;
    const PipelineResult a = run_pipeline(g, cfg);
    const PipelineResult b = run_pipeline(g, cfg);
    EXPECT_EQ(a.ranking, b.ranking);
    EXPECT_GE(a.metrics.forward_weight, forward_weight(g, greedy_rank(g, {.seed = cfg.seed})));
    Weight prev;
    for (const auto& h : a.history) {
      EXPECT_GE(h.best, prev);
      EXPECT_EQ(h.improved, h.best > prev || &h == &a.history.front());
      prev = h.best;
    }
    EXPECT_EQ(prev, a.metrics.forward_weight);
  }
}

TEST(RunPipeline, StopsWhenSweepBringsNothing) {
  const Graph g = test::g3();
  const PipelineResult res = run_pipeline(g, PipelineConfig::defaults());
  EXPECT_EQ(res.sweeps, 1u);
  PipelineConfig capped = PipelineConfig::defaults();
  capped.time_budget_seconds = 1e-9;
  const PipelineResult quick = run_pipeline(g, capped);
  EXPECT_EQ(quick.sweeps, 0u);
  EXPECT_EQ(quick.history.size(), 1u);
}

TEST(RunPipeline, CheckpointWriteAndResume) {
  TempDir dir;
  const fs::path cp = dir.path() / "best.txt";
  std::mt19937_64 rng(157);
  const Graph g = test::random_graph(rng, {.nodes = 40, .density = 0.1});

  PipelineConfig cfg = stages("greedy", "");
  cfg.checkpoint = cp;
  const PipelineResult first = run_pipeline(g, cfg);
  ASSERT_TRUE(fs::exists(cp));
  ASSERT_TRUE(fs::exists(sidecar_path(cp)));
  EXPECT_FALSE(fs::exists(dir.path() / "best.txt.tmp"));
  EXPECT_EQ(read_ranking(cp, g), first.ranking);
  std::ifstream side(sidecar_path(cp));
  const auto meta = nlohmann::json::parse(side);
  EXPECT_EQ(meta.at("forward_weight_units").get<std::int64_t>(), first.metrics.forward_weight.units);
  EXPECT_EQ(meta.at("total_weight_units").get<std::int64_t>(), g.total_weight().units);
  EXPECT_EQ(meta.at("history").size(), 1u);

  cfg = PipelineConfig::defaults();
  cfg.checkpoint = cp;
  const PipelineResult second = run_pipeline(g, cfg);
  EXPECT_TRUE(second.resumed);
  EXPECT_GE(second.metrics.forward_weight, first.metrics.forward_weight);
  EXPECT_EQ(read_ranking(cp, g), second.ranking);
  EXPECT_EQ(forward_weight(g, read_ranking(cp, g)), second.metrics.forward_weight);
}

TEST(RunPipeline, CheckpointMismatchIsAnError) {
  TempDir dir;
  const fs::path cp = dir.path() / "best.txt";
  PipelineConfig cfg = stages("greedy", "");
  cfg.checkpoint = cp;
  run_pipeline(test::g3(), cfg);
  // Same ids, different weights.
  EXPECT_THROW(run_pipeline(test::parse("a,b,5\nb,c,3\nc,a,11\n"), cfg), ValidationError);
  // Ranking edited behind the sidecar's back.
  {
    std::ofstream out(cp, std::ios::trunc);
    out << "a\nb\nc\n";
  }
  EXPECT_THROW(run_pipeline(test::g3(), cfg), ValidationError);
  fs::remove(sidecar_path(cp));
  EXPECT_THROW(run_pipeline(test::g3(), cfg), IoError);
}

TEST(RunPipeline, FailingStageLeavesBestCheckpoint) {
  TempDir dir;
  const fs::path cp = dir.path() / "best.txt";
  const Graph g = test::g3();
  PipelineConfig cfg = stages("greedy", "refine:max_block=oops");
  cfg.checkpoint = cp;
  EXPECT_THROW(run_pipeline(g, cfg), ValidationError);
  ASSERT_TRUE(fs::exists(cp));
  EXPECT_EQ(forward_weight(g, read_ranking(cp, g)), Weight{1500});
}

TEST(GraphFingerprint, SensitiveToContent) {
  EXPECT_EQ(graph_fingerprint(test::g3()), graph_fingerprint(test::g3()));
  EXPECT_NE(graph_fingerprint(test::g3()), graph_fingerprint(test::parse("a,b,5\nb,c,3\nc,a,10.01\n")));
  EXPECT_NE(graph_fingerprint(test::g3()), graph_fingerprint(test::parse("a,b,5\nb,d,3\nd,a,10\n")));
}

}  // namespace
}  // namespace fwrank
