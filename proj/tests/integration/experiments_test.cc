// Copyright 2026 The credinet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "credinet/experiments.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "credinet/error.h"
#include "gtest/gtest.h"

namespace credinet {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("credinet_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig SmallConfig(Scenario scenario, int replications) {
  ExperimentConfig c;
  c.scenario = scenario;
  c.params.n_clients = 15;
  c.params.horizon = 6;
  c.params.q = Schedule(0.05);
  c.replications = replications;
  c.seed = 11;
  return c;
}

void ExpectSameSummary(const McSummary& a, const McSummary& b, double tol) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    ASSERT_NEAR(a.rows[k].bias, b.rows[k].bias, tol);
    ASSERT_NEAR(a.rows[k].mse, b.rows[k].mse, tol);
    ASSERT_NEAR(a.rows[k].variance, b.rows[k].variance, tol);
    ASSERT_NEAR(a.rows[k].box.median, b.rows[k].box.median, tol);
    if (std::isfinite(a.rows[k].crlb)) {
      ASSERT_NEAR(a.rows[k].crlb, b.rows[k].crlb, tol);
    } else {
      ASSERT_EQ(a.rows[k].crlb, b.rows[k].crlb);
    }
  }
}

TEST(RunExperimentTest, SingleReplicationEqualsOneFilterRun) {
  ExperimentConfig c;
  c.scenario = Scenario::kRiskPrediction;
  c.params.n_clients = 1;
  c.params.horizon = 10;
  c.replications = 1;
  const ExperimentResult res = RunExperiment(c);
  ASSERT_EQ(res.filter_runs.size(), 1u);
  EXPECT_TRUE(res.interaction_runs.empty());

  const StreamFactory streams(c.seed, 0);
  const auto truths = BuildPopulation(c, streams);
  const auto direct =
      RunFilter(c.params, truths, streams, {c.PriorMean(), false});
  for (std::size_t t = 0; t < direct.steps.size(); ++t) {
    EXPECT_EQ(res.filter_runs[0].steps[t][0].state.posterior,
              direct.steps[t][0].state.posterior);
  }
  const McSummary* s = res.Summary("risk_prediction");
  ASSERT_NE(s, nullptr);
  for (const auto& row : s->rows) {
    EXPECT_EQ(row.variance, 0.0);
    EXPECT_NEAR(row.mse, row.bias * row.bias, 1e-15);
  }
}

TEST(RunExperimentTest, UniformPopulationIsSorted) {
  const auto c = SmallConfig(Scenario::kRecursiveScoring, 3);
  const ExperimentResult res = RunExperiment(c);
  for (const auto& pop : res.populations) {
    EXPECT_TRUE(std::is_sorted(
        pop.begin(), pop.end(),
        [](const ClientTruth& a, const ClientTruth& b) { return a.x < b.x; }));
  }
}

TEST(RunExperimentTest, IndependentOfThreadCount) {
  const auto c = SmallConfig(Scenario::kBoth, 9);
  const ExperimentResult one = RunExperiment(c, {1, nullptr, true});
  const ExperimentResult many = RunExperiment(c, {4, nullptr, true});
  ASSERT_EQ(one.summaries.size(), 2u);
  for (std::size_t k = 0; k < one.summaries.size(); ++k) {
    ExpectSameSummary(one.summaries[k], many.summaries[k], 0.0);
  }
}

TEST(RunExperimentTest, BothScenariosShareTruths) {
  const auto c = SmallConfig(Scenario::kBoth, 2);
  const ExperimentResult res = RunExperiment(c);
  for (std::size_t r = 0; r < 2; ++r) {
    const auto& f = res.filter_runs[r];
    const auto& g = res.interaction_runs[r];
    for (std::size_t t = 0; t < f.steps.size(); ++t) {
      for (std::size_t i = 0; i < f.steps[t].size(); ++i) {
        ASSERT_EQ(f.steps[t][i].x_true, g.steps[t][i].x_true);
      }
    }
  }
}

TEST(AggregateTest, InvariantUnderReplicationOrder) {
  const auto c = SmallConfig(Scenario::kRecursiveScoring, 12);
  const ExperimentResult res = RunExperiment(c);
  auto grids = InteractionEstimates(res.interaction_runs);
  const McSummary forward = Aggregate(grids, "x");
  std::reverse(grids.begin(), grids.end());
  std::rotate(grids.begin(), grids.begin() + 5, grids.end());
  ExpectSameSummary(forward, Aggregate(grids, "x"), 1e-12);
}

TEST(CompareNTest, IdenticalRunsGiveUnitRatios) {
  auto c = SmallConfig(Scenario::kRecursiveScoring, 20);
  c.params.n_clients = 40;
  const auto grids = InteractionEstimates(RunExperiment(c).interaction_runs);
  const ComparisonTable table = CompareN(grids, grids, {});
  ASSERT_FALSE(table.rows.empty());
  for (const auto& row : table.rows) {
    if (row.iqr_small > 0.0) EXPECT_EQ(row.ratio, 1.0);
  }
  EXPECT_EQ(table.fraction_smaller, 0.0);
}

TEST(CompareNTest, DifferentSeedsStayNearOne) {
  auto c = SmallConfig(Scenario::kRecursiveScoring, 60);
  c.params.n_clients = 60;
  const auto a = InteractionEstimates(RunExperiment(c).interaction_runs);
  c.seed = 12345;
  const auto b = InteractionEstimates(RunExperiment(c).interaction_runs);
  const ComparisonTable table = CompareN(a, b, {});
  double log_sum = 0.0;
  int middle = 0;
  for (const auto& row : table.rows) {
    if (!row.middle) continue;
    ASSERT_GT(row.ratio, 0.5);
    ASSERT_LT(row.ratio, 2.0);
    log_sum += std::log(row.ratio);
    ++middle;
  }
  ASSERT_GT(middle, 0);
  EXPECT_LT(std::abs(log_sum / middle), 0.15);
}

TEST(CompareNTest, RejectsHorizonMismatch) {
  auto c = SmallConfig(Scenario::kRecursiveScoring, 3);
  const auto a = InteractionEstimates(RunExperiment(c).interaction_runs);
  c.params.horizon = 4;
  const auto b = InteractionEstimates(RunExperiment(c).interaction_runs);
  EXPECT_THROW(CompareN(a, b, {}), ValidationError);
}

TEST(WriteExperimentTest, TrajectoriesReadBackToSameSummary) {
  const auto c = SmallConfig(Scenario::kBoth, 4);
  const ExperimentResult res = RunExperiment(c);
  const fs::path dir = FreshDir("roundtrip");
  const auto files = WriteExperiment(res, dir.string());
  for (const char* name :
       {"summary.csv", "outliers.csv", "trajectories_risk_prediction.csv",
        "trajectories_recursive_scoring.csv", "bounds_recursive_scoring.csv",
        "network_edges.csv"}) {
    EXPECT_NE(std::find(files.begin(), files.end(), name), files.end())
        << name;
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  EXPECT_TRUE(fs::exists(dir / "manifest.cfg"));

  const auto filter_back =
      ReadTrajectoryEstimates((dir / "trajectories_risk_prediction.csv").string());
  ExpectSameSummary(*res.Summary("risk_prediction"),
                    Aggregate(filter_back, "risk_prediction"), 1e-9);
  const auto loop_back = ReadTrajectoryEstimates(
      (dir / "trajectories_recursive_scoring.csv").string());
  ExpectSameSummary(*res.Summary("recursive_scoring"),
                    Aggregate(loop_back, "recursive_scoring"), 1e-9);
}

TEST(WriteExperimentTest, ManifestRerunIsByteIdentical) {
  const auto c = SmallConfig(Scenario::kBoth, 5);
  const fs::path first = FreshDir("first");
  const auto files = WriteExperiment(RunExperiment(c), first.string());
  const ExperimentConfig again =
      LoadConfigFile((first / "manifest.cfg").string());
  const fs::path second = FreshDir("second");
  WriteExperiment(RunExperiment(again, {3, nullptr, true}), second.string());
  for (const auto& name : files) {
    EXPECT_EQ(ReadFile(first / name), ReadFile(second / name)) << name;
  }
  EXPECT_EQ(ReadFile(first / "manifest.cfg"), ReadFile(second / "manifest.cfg"));
}

TEST(ReadTrajectoryEstimatesTest, MissingFileIsIoError) {
  EXPECT_THROW(ReadTrajectoryEstimates("/nonexistent/traj.csv"), IoError);
}

}  // namespace
}  // namespace credinet
