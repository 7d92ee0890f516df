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

#ifndef CREDINET_EXPERIMENTS_H_
#define CREDINET_EXPERIMENTS_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "credinet/config.h"
#include "credinet/filter.h"
#include "credinet/interaction.h"
#include "credinet/metrics.h"
#include "credinet/model.h"

namespace credinet {

struct RunOptions {
  int threads = 1;
  // One line per finished replication when set.
  std::ostream* log = nullptr;
  // Keep per-period networks of replication 0 for the edge-list export.
  bool record_first_networks = true;
};

struct ExperimentResult {
  ExperimentConfig config;
  // Indexed by replication. Empty when the scenario was not requested.
  std::vector<std::vector<ClientTruth>> populations;
  std::vector<FilterTrajectory> filter_runs;
  std::vector<InteractionTrajectory> interaction_runs;
  std::vector<McSummary> summaries;

  const McSummary* Summary(std::string_view estimator) const;
};

// Population for one replication: drawn (or copied), optionally sorted by
// score, with the configured input schedules attached.
std::vector<ClientTruth> BuildPopulation(const ExperimentConfig& cfg,
                                         const StreamFactory& streams);

// Runs every replication with its own StreamFactory(seed, r). When both
// scenarios are requested they share the population, truth noise and
// network uniforms of a replication. Results do not depend on `threads`.
ExperimentResult RunExperiment(const ExperimentConfig& cfg,
                               const RunOptions& options = {});

std::vector<EstimateGrid> FilterEstimates(
    std::span<const FilterTrajectory> runs);
std::vector<EstimateGrid> InteractionEstimates(
    std::span<const InteractionTrajectory> runs);

// Writes manifest.cfg, summary.csv, outliers.csv, trajectory and bound CSVs
// and the replication-0 edge list into `dir` (created if missing). Returns
// the file names written.
std::vector<std::string> WriteExperiment(const ExperimentResult& result,
                                         const std::string& dir);

struct ComparisonRow {
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  double iqr_small = 0.0;
  double iqr_large = 0.0;
  double ratio = 0.0;  // iqr_large / iqr_small
  bool middle = false;
};

struct ComparisonTable {
  int n_small = 0;
  int n_large = 0;
  int t = 0;
  std::vector<ComparisonRow> rows;
  // Share of middle-band bins whose IQR is strictly smaller for n_large.
  double fraction_smaller = 0.0;
};

struct CompareOptions {
  int t = -1;  // -1: final step
  double bin_width = 1.0;
  double score_cap = 15.0;
  double band_lo = 4.0;
  double band_hi = 12.0;
};

// Error IQR per score bin, pooling every client and replication whose truth
// at step t falls in the bin.
ComparisonTable CompareN(std::span<const EstimateGrid> small,
                         std::span<const EstimateGrid> large,
                         const CompareOptions& options);

// summary.csv / outliers.csv writers, also used by the metrics command.
void WriteSummaryCsv(std::span<const McSummary> summaries,
                     const std::string& path);
void WriteOutliersCsv(std::span<const McSummary> summaries,
                      const std::string& path);

void WriteComparison(const ComparisonTable& table, const std::string& path);

// Reads a trajectory CSV written by WriteExperiment (either scenario) back
// into per-replication estimate grids using the mean_post, x_true and
// degree columns.
std::vector<EstimateGrid> ReadTrajectoryEstimates(const std::string& path);

}  // namespace credinet

#endif  // CREDINET_EXPERIMENTS_H_
