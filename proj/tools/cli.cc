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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "credinet/config.h"
#include "credinet/csv.h"
#include "credinet/error.h"
#include "credinet/experiments.h"

namespace credinet::cli {
namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::vector<std::string> settings;
  std::optional<uint64_t> seed;
  std::string out_dir;
  int threads = 1;
  bool quiet = false;
};

std::string DefaultOutDir() {
  if (const char* env = std::getenv("CREDINET_OUT_DIR"); env && *env) {
    return env;
  }
  return "results";
}

void AddCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Experiment config file");
  cmd->add_option("--preset", args.preset, "Built-in preset (see `presets`)");
  cmd->add_option("--set", args.settings, "Override a config key (key=value)")
      ->take_all();
  cmd->add_option("--seed", args.seed, "Master seed override");
  cmd->add_option("--out", args.out_dir,
                  "Output directory (default $CREDINET_OUT_DIR or ./results)");
  cmd->add_option("--threads", args.threads, "Worker threads for replications")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--quiet", args.quiet, "Suppress per-replication log lines");
}

ExperimentConfig ResolveConfig(const CommonArgs& args) {
  if (!args.config_path.empty() && !args.preset.empty()) {
    throw CLI::ValidationError("--config and --preset are mutually exclusive");
  }
  ExperimentConfig cfg;
  if (!args.config_path.empty()) {
    cfg = LoadConfigFile(args.config_path);
  } else if (!args.preset.empty()) {
    auto preset = FindPreset(args.preset);
    if (!preset) {
      throw ValidationError("preset", "unknown preset '" + args.preset + "'");
    }
    cfg = *preset;
  }
  for (const auto& setting : args.settings) {
    const auto eq = setting.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--set", "expected key=value, got '" + setting + "'");
    }
    ApplySetting(cfg, setting.substr(0, eq), setting.substr(eq + 1));
  }
  if (args.seed) cfg.seed = *args.seed;
  cfg.Validate();
  return cfg;
}

void PrintPresets(std::ostream& out) {
  for (const auto& name : PresetNames()) {
    const ExperimentConfig cfg = *FindPreset(name);
    const auto& p = cfg.params;
    out << name << '\n';
    auto row = [&](const char* key, const std::string& value) {
      out << "  " << std::left << std::setw(20) << key << value << '\n';
    };
    row("scenario", std::string(ScenarioName(cfg.scenario)));
    row("n_clients", std::to_string(p.n_clients));
    row("horizon", std::to_string(p.horizon));
    row("a", FormatNumber(p.a[0]));
    row("b", FormatNumber(p.b[0]));
    row("q", FormatNumber(p.q[0]));
    row("r", FormatNumber(p.r[0]));
    row("nu", FormatNumber(p.nu));
    row("score_cap", FormatNumber(p.score_cap));
    row("initial_belief_var", FormatNumber(p.initial_belief_var));
    row("population", "uniform");
    row("replications", std::to_string(cfg.replications));
    row("seed", std::to_string(cfg.seed));
  }
}

int RunSimulation(const CommonArgs& args, bool single, int compare_with,
                  std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = ResolveConfig(args);
  if (single) cfg.replications = 1;
  const std::string dir = args.out_dir.empty() ? DefaultOutDir() : args.out_dir;

  RunOptions options;
  options.threads = args.threads;
  options.log = args.quiet ? nullptr : &err;
  const ExperimentResult result = RunExperiment(cfg, options);
  const auto files = WriteExperiment(result, dir);
  out << "wrote " << files.size() << " files to " << dir << '\n';

  if (compare_with > 0) {
    if (result.interaction_runs.empty()) {
      throw ValidationError("scenario",
                            "--compare-with needs the recursive_scoring scenario");
    }
    ExperimentConfig other = cfg;
    other.params.n_clients = compare_with;
    other.opt_out.clear();
    other.client_u.clear();
    if (other.population == PopulationMode::kExplicit) {
      throw ValidationError("population",
                            "--compare-with needs a uniform population");
    }
    const ExperimentResult second = RunExperiment(other, options);
    const std::string sub =
        (std::filesystem::path(dir) / ("compare_n" + std::to_string(compare_with)))
            .string();
    WriteExperiment(second, sub);

    const auto small_grids = InteractionEstimates(result.interaction_runs);
    const auto large_grids = InteractionEstimates(second.interaction_runs);
    CompareOptions copt;
    copt.score_cap = cfg.params.score_cap;
    const bool swap = compare_with < cfg.params.n_clients;
    const ComparisonTable table =
        swap ? CompareN(large_grids, small_grids, copt)
             : CompareN(small_grids, large_grids, copt);
    const std::string path =
        (std::filesystem::path(dir) / "comparison.csv").string();
    WriteComparison(table, path);
    out << "N=" << table.n_large << " error IQR smaller than N=" << table.n_small
        << " in " << FormatNumber(100.0 * table.fraction_smaller)
        << "% of middle-band bins; wrote " << path << '\n';
  }
  return kExitOk;
}

int RunMetrics(const std::vector<std::string>& inputs,
               const std::string& estimator, const std::string& crlb,
               const std::string& out_dir, std::ostream& out) {
  CrlbAggregation mode = CrlbAggregation::kMean;
  if (crlb == "harmonic") {
    mode = CrlbAggregation::kHarmonic;
  } else if (crlb != "mean") {
    throw ValidationError("crlb_aggregation", "expected mean or harmonic");
  }
  std::vector<McSummary> summaries;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const auto grids = ReadTrajectoryEstimates(inputs[k]);
    std::string tag = estimator;
    if (tag.empty()) {
      tag = std::filesystem::path(inputs[k]).stem().string();
      if (tag.starts_with("trajectories_")) tag = tag.substr(13);
    }
    summaries.push_back(Aggregate(grids, tag, mode));
  }
  const std::filesystem::path dir(out_dir.empty() ? DefaultOutDir() : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir.string(), "cannot create output directory");
  WriteSummaryCsv(summaries, (dir / "summary.csv").string());
  WriteOutliersCsv(summaries, (dir / "outliers.csv").string());
  out << "wrote summary.csv and outliers.csv to " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"credinet: credit scoring on dynamic homophily networks"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a single replication");
  AddCommon(simulate, sim_args);

  CommonArgs mc_args;
  int compare_with = 0;
  auto* montecarlo =
      app.add_subcommand("montecarlo", "Run all replications and aggregate");
  AddCommon(montecarlo, mc_args);
  montecarlo->add_option("--compare-with", compare_with,
                         "Also run with this many clients (paired seeds) and "
                         "write comparison.csv");

  std::vector<std::string> metric_inputs;
  std::string metric_estimator;
  std::string metric_crlb = "mean";
  std::string metric_out;
  auto* metrics = app.add_subcommand(
      "metrics", "Aggregate trajectory CSVs into summary statistics");
  metrics->add_option("--in", metric_inputs, "Trajectory CSV files")
      ->required()
      ->take_all();
  metrics->add_option("--estimator", metric_estimator,
                      "Estimator tag (default: derived from file name)");
  metrics->add_option("--crlb", metric_crlb, "CRLB aggregation: mean|harmonic");
  metrics->add_option("--out", metric_out, "Output directory");

  app.add_subcommand("presets", "List built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("presets")) {
      PrintPresets(out);
      return kExitOk;
    }
    if (simulate->parsed()) {
      return RunSimulation(sim_args, true, 0, out, err);
    }
    if (montecarlo->parsed()) {
      return RunSimulation(mc_args, false, compare_with, out, err);
    }
    if (metrics->parsed()) {
      return RunMetrics(metric_inputs, metric_estimator, metric_crlb,
                        metric_out, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace credinet::cli
