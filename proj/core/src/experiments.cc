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
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "credinet/csv.h"
#include "credinet/error.h"

namespace credinet {
namespace {

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

void CloseOutput(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError(path.string(), "write failed");
}

bool WantsFilter(Scenario s) { return s != Scenario::kRecursiveScoring; }
bool WantsInteraction(Scenario s) { return s != Scenario::kRiskPrediction; }

void WriteFilterTrajectories(std::ostream& os,
                             std::span<const FilterTrajectory> runs) {
  CsvWriter csv(os);
  for (auto h : {"replication", "t", "client", "x_true", "y_obs", "mean_pred",
                 "var_pred", "mean_post", "var_post", "degree"}) {
    csv.Field(h);
  }
  csv.EndRow();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t t = 0; t < runs[r].steps.size(); ++t) {
      for (std::size_t i = 0; i < runs[r].steps[t].size(); ++i) {
        const FilterStep& s = runs[r].steps[t][i];
        csv.Field(static_cast<int>(r)).Field(static_cast<int>(t))
            .Field(static_cast<int>(i)).Field(s.x_true).Field(s.y_obs)
            .Field(s.state.predicted.mean).Field(s.state.predicted.variance)
            .Field(s.state.posterior.mean).Field(s.state.posterior.variance)
            .Field(s.state.degree_used);
        csv.EndRow();
      }
    }
  }
}

void WriteInteractionTrajectories(std::ostream& os,
                                  std::span<const InteractionTrajectory> runs) {
  CsvWriter csv(os);
  for (auto h : {"replication", "t", "client", "x_true", "mean_published",
                 "var_published", "mean_post", "var_post", "degree",
                 "degree_used"}) {
    csv.Field(h);
  }
  csv.EndRow();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t t = 0; t < runs[r].steps.size(); ++t) {
      for (std::size_t i = 0; i < runs[r].steps[t].size(); ++i) {
        const InteractionStep& s = runs[r].steps[t][i];
        csv.Field(static_cast<int>(r)).Field(static_cast<int>(t))
            .Field(static_cast<int>(i)).Field(s.x_true)
            .Field(s.published.mean).Field(s.published.variance)
            .Field(s.corrected.mean).Field(s.corrected.variance)
            .Field(s.degree).Field(s.degree_used);
        csv.EndRow();
      }
    }
  }
}

void WriteSummary(std::ostream& os, std::span<const McSummary> summaries) {
  CsvWriter csv(os);
  for (auto h : {"estimator", "client", "t", "x_true", "bias", "variance", "mse",
                 "crlb", "median", "q25", "q75"}) {
    csv.Field(h);
  }
  csv.EndRow();
  for (const auto& summary : summaries) {
    for (const auto& row : summary.rows) {
      csv.Field(summary.estimator).Field(row.client).Field(row.t)
          .Field(row.x_true).Field(row.bias).Field(row.variance).Field(row.mse)
          .Field(row.crlb).Field(row.box.median).Field(row.box.q25)
          .Field(row.box.q75);
      csv.EndRow();
    }
  }
}

void WriteOutliers(std::ostream& os, std::span<const McSummary> summaries) {
  CsvWriter csv(os);
  for (auto h : {"estimator", "client", "t", "error"}) csv.Field(h);
  csv.EndRow();
  for (const auto& summary : summaries) {
    for (const auto& row : summary.rows) {
      for (double e : row.box.outliers) {
        csv.Field(summary.estimator).Field(row.client).Field(row.t).Field(e);
        csv.EndRow();
      }
    }
  }
}

void WriteBoundReport(std::ostream& os, const ExperimentConfig& cfg,
                      std::span<const InteractionTrajectory> runs) {
  const auto& p = cfg.params;
  const auto horizon = static_cast<std::size_t>(p.horizon);
  double q_l = HUGE_VAL;
  double q_u = 0.0;
  std::vector<double> a(horizon);
  for (std::size_t k = 0; k < horizon; ++k) {
    q_l = std::min(q_l, p.q[k]);
    q_u = std::max(q_u, p.q[k]);
    a[k] = p.a[k];
  }
  const bool upper_applies =
      !(q_l > 0.0) || 1.0 / p.initial_belief_var <= 1.0 / q_l + p.n_clients;

  CsvWriter csv(os);
  for (auto h : {"replication", "t", "client", "P_hat", "P_l", "P_u", "crlb",
                 "lower_degenerate"}) {
    csv.Field(h);
  }
  csv.EndRow();
  std::vector<int> history;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& steps = runs[r].steps;
    const std::size_t clients = steps.front().size();
    for (std::size_t i = 0; i < clients; ++i) {
      history.clear();
      for (std::size_t t = 1; t < steps.size(); ++t) {
        history.push_back(steps[t][i].degree_used);
        double lower = q_l > 0.0 ? 1.0 / (1.0 / q_l + p.n_clients) : 0.0;
        double upper = std::nan("");
        if (upper_applies) {
          const PrecisionBounds b = ComputePrecisionBounds(
              q_l, q_u, p.n_clients, a, p.initial_belief_var, history);
          lower = b.lower;
          upper = b.upper;
        }
        csv.Field(static_cast<int>(r)).Field(static_cast<int>(t))
            .Field(static_cast<int>(i)).Field(steps[t][i].corrected.variance)
            .Field(lower).Field(upper).Field(Crlb(steps[t][i].degree))
            .Field(q_l > 0.0 ? "false" : "true");
        csv.EndRow();
      }
    }
  }
}

void WriteEdgeList(std::ostream& os, std::span<const NetworkSnapshot> nets) {
  CsvWriter csv(os);
  csv.Field("t").Field("i").Field("j");
  csv.EndRow();
  for (const auto& snap : nets) {
    for (int i = 0; i < snap.n_clients(); ++i) {
      for (int j : snap.Neighbors(i)) {
        csv.Field(snap.time_index()).Field(i).Field(j);
        csv.EndRow();
      }
    }
  }
}

}  // namespace

const McSummary* ExperimentResult::Summary(std::string_view estimator) const {
  for (const auto& s : summaries) {
    if (s.estimator == estimator) return &s;
  }
  return nullptr;
}

std::vector<ClientTruth> BuildPopulation(const ExperimentConfig& cfg,
                                         const StreamFactory& streams) {
  auto truths = InitPopulation(cfg.params, cfg.population, cfg.scores, streams);
  if (cfg.population == PopulationMode::kUniform && cfg.sort_by_truth) {
    std::stable_sort(truths.begin(), truths.end(),
                     [](const ClientTruth& l, const ClientTruth& r) {
                       return l.x < r.x;
                     });
  }
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const auto it = cfg.client_u.find(static_cast<int>(i));
    truths[i].u = it != cfg.client_u.end() ? it->second : cfg.u;
  }
  return truths;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg,
                               const RunOptions& options) {
  cfg.Validate();
  ExperimentResult result;
  result.config = cfg;
  const auto reps = static_cast<std::size_t>(cfg.replications);
  const bool filter = WantsFilter(cfg.scenario);
  const bool interaction = WantsInteraction(cfg.scenario);
  result.populations.resize(reps);
  if (filter) result.filter_runs.resize(reps);
  if (interaction) result.interaction_runs.resize(reps);

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        const StreamFactory streams(cfg.seed, r);
        auto truths = BuildPopulation(cfg, streams);
        const bool keep_nets = options.record_first_networks && r == 0;
        if (filter) {
          result.filter_runs[r] = RunFilter(cfg.params, truths, streams,
                                            {cfg.PriorMean(), keep_nets});
        }
        if (interaction) {
          result.interaction_runs[r] = RunInteraction(
              cfg.params, truths, streams, {cfg.opt_out, keep_nets});
        }
        result.populations[r] = std::move(truths);
        if (options.log) {
          std::lock_guard lock(log_mutex);
          *options.log << "replication " << r + 1 << "/" << reps << " done\n";
        }
      } catch (...) {
        std::lock_guard lock(log_mutex);
        if (!failure) failure = std::current_exception();
        next = reps;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads,
                                                static_cast<int>(reps)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  if (filter) {
    result.summaries.push_back(Aggregate(FilterEstimates(result.filter_runs),
                                         "risk_prediction", cfg.crlb));
  }
  if (interaction) {
    result.summaries.push_back(
        Aggregate(InteractionEstimates(result.interaction_runs),
                  "recursive_scoring", cfg.crlb));
  }
  return result;
}

std::vector<EstimateGrid> FilterEstimates(
    std::span<const FilterTrajectory> runs) {
  std::vector<EstimateGrid> grids;
  grids.reserve(runs.size());
  for (const auto& run : runs) {
    EstimateGrid grid(run.steps.size());
    for (std::size_t t = 0; t < run.steps.size(); ++t) {
      for (const auto& s : run.steps[t]) {
        grid[t].push_back({s.state.posterior.mean, s.x_true, s.state.degree_used});
      }
    }
    grids.push_back(std::move(grid));
  }
  return grids;
}

std::vector<EstimateGrid> InteractionEstimates(
    std::span<const InteractionTrajectory> runs) {
  std::vector<EstimateGrid> grids;
  grids.reserve(runs.size());
  for (const auto& run : runs) {
    EstimateGrid grid(run.steps.size());
    for (std::size_t t = 0; t < run.steps.size(); ++t) {
      for (const auto& s : run.steps[t]) {
        grid[t].push_back({s.corrected.mean, s.x_true, s.degree});
      }
    }
    grids.push_back(std::move(grid));
  }
  return grids;
}

std::vector<std::string> WriteExperiment(const ExperimentResult& result,
                                         const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError(dir, "cannot create output directory: " + ec.message());

  const auto& cfg = result.config;
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, auto&& body) {
    const fs::path path = root / name;
    std::ofstream out = OpenOutput(path);
    body(out);
    CloseOutput(out, path);
    written.push_back(name);
  };

  emit("summary.csv", [&](std::ostream& os) { WriteSummary(os, result.summaries); });
  emit("outliers.csv",
       [&](std::ostream& os) { WriteOutliers(os, result.summaries); });
  if (!result.filter_runs.empty() && cfg.write_trajectories) {
    emit("trajectories_risk_prediction.csv", [&](std::ostream& os) {
      WriteFilterTrajectories(os, result.filter_runs);
    });
  }
  if (!result.interaction_runs.empty()) {
    if (cfg.write_trajectories) {
      emit("trajectories_recursive_scoring.csv", [&](std::ostream& os) {
        WriteInteractionTrajectories(os, result.interaction_runs);
      });
    }
    emit("bounds_recursive_scoring.csv", [&](std::ostream& os) {
      WriteBoundReport(os, cfg, result.interaction_runs);
    });
  }
  // Edge list of replication 0, from whichever scenario ran the loop.
  std::span<const NetworkSnapshot> nets;
  if (!result.interaction_runs.empty()) {
    nets = result.interaction_runs.front().networks;
  } else if (!result.filter_runs.empty()) {
    nets = result.filter_runs.front().networks;
  }
  if (!nets.empty()) {
    emit("network_edges.csv", [&](std::ostream& os) { WriteEdgeList(os, nets); });
  }

  emit("manifest.cfg", [&](std::ostream& os) {
    os << "# credinet run manifest. Re-run with:\n"
       << "#   credinet montecarlo --config manifest.cfg --out <dir>\n";
    for (const auto& name : written) os << "# output: " << name << '\n';
    os << SerializeConfig(cfg);
  });
  return written;
}

ComparisonTable CompareN(std::span<const EstimateGrid> small,
                         std::span<const EstimateGrid> large,
                         const CompareOptions& options) {
  if (small.empty() || large.empty()) {
    throw ValidationError("replications", "comparison needs both runs");
  }
  if (small.front().size() != large.front().size()) {
    throw ValidationError("horizon", "mismatched horizons in comparison");
  }
  if (!(options.bin_width > 0.0)) {
    throw ValidationError("bin_width", "must be > 0");
  }
  const int last = static_cast<int>(small.front().size()) - 1;
  const int t = options.t < 0 ? last : options.t;
  if (t > last) throw ValidationError("t", "beyond horizon");

  const auto n_bins = static_cast<std::size_t>(
      std::ceil(options.score_cap / options.bin_width));
  auto collect = [&](std::span<const EstimateGrid> runs) {
    std::vector<std::vector<double>> bins(n_bins);
    for (const auto& grid : runs) {
      for (const auto& s : grid[static_cast<std::size_t>(t)]) {
        const double b = std::floor(s.truth / options.bin_width);
        if (b < 0.0 || b >= static_cast<double>(n_bins)) continue;
        bins[static_cast<std::size_t>(b)].push_back(s.estimate - s.truth);
      }
    }
    return bins;
  };
  const auto small_bins = collect(small);
  const auto large_bins = collect(large);

  auto iqr = [](std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    return Quantile(v, 0.75) - Quantile(v, 0.25);
  };

  ComparisonTable table;
  table.n_small = small.front().front().size();
  table.n_large = large.front().front().size();
  table.t = t;
  int middle = 0;
  int smaller = 0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    ComparisonRow row;
    row.bin_lo = static_cast<double>(b) * options.bin_width;
    row.bin_hi = row.bin_lo + options.bin_width;
    row.iqr_small = iqr(small_bins[b]);
    row.iqr_large = iqr(large_bins[b]);
    row.ratio = row.iqr_large / row.iqr_small;
    row.middle = row.bin_lo >= options.band_lo && row.bin_hi <= options.band_hi;
    if (row.middle && std::isfinite(row.ratio)) {
      ++middle;
      if (row.iqr_large < row.iqr_small) ++smaller;
    }
    table.rows.push_back(row);
  }
  table.fraction_smaller = middle ? static_cast<double>(smaller) / middle : 0.0;
  return table;
}

void WriteSummaryCsv(std::span<const McSummary> summaries,
                     const std::string& path) {
  std::ofstream out = OpenOutput(path);
  WriteSummary(out, summaries);
  CloseOutput(out, path);
}

void WriteOutliersCsv(std::span<const McSummary> summaries,
                      const std::string& path) {
  std::ofstream out = OpenOutput(path);
  WriteOutliers(out, summaries);
  CloseOutput(out, path);
}

void WriteComparison(const ComparisonTable& table, const std::string& path) {
  std::ofstream out = OpenOutput(path);
  CsvWriter csv(out);
  for (auto h : {"bin_lo", "bin_hi", "n_small", "n_large", "iqr_small",
                 "iqr_large", "ratio", "middle"}) {
    csv.Field(h);
  }
  csv.EndRow();
  for (const auto& row : table.rows) {
    csv.Field(row.bin_lo).Field(row.bin_hi).Field(table.n_small)
        .Field(table.n_large).Field(row.iqr_small).Field(row.iqr_large)
        .Field(row.ratio).Field(row.middle ? "true" : "false");
    csv.EndRow();
  }
  CloseOutput(out, path);
}

std::vector<EstimateGrid> ReadTrajectoryEstimates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open trajectory file");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path, "empty trajectory file");

  auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  const auto header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* name :
       {"replication", "t", "client", "x_true", "mean_post", "degree"}) {
    if (!col.count(name)) {
      throw ValidationError(name, "missing column in " + path);
    }
  }

  std::vector<EstimateGrid> grids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ValidationError("line " + std::to_string(line_no),
                            "column count mismatch in " + path);
    }
    try {
      const auto r = std::stoul(cells[col["replication"]]);
      const auto t = std::stoul(cells[col["t"]]);
      const auto c = std::stoul(cells[col["client"]]);
      if (grids.size() <= r) grids.resize(r + 1);
      auto& grid = grids[r];
      if (grid.size() <= t) grid.resize(t + 1);
      if (grid[t].size() <= c) grid[t].resize(c + 1, {std::nan(""), 0.0, -1});
      grid[t][c] = {std::stod(cells[col["mean_post"]]),
                    std::stod(cells[col["x_true"]]),
                    std::stoi(cells[col["degree"]])};
    } catch (const std::logic_error&) {
      throw ValidationError("line " + std::to_string(line_no),
                            "malformed number in " + path);
    }
  }
  for (const auto& grid : grids) {
    for (const auto& row : grid) {
      for (const auto& s : row) {
        if (s.degree < 0) {
          throw ValidationError("trajectory", "incomplete grid in " + path);
        }
      }
    }
  }
  if (grids.empty()) throw ValidationError("trajectory", "no rows in " + path);
  return grids;
}

}  // namespace credinet
