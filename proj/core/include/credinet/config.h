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

#ifndef CREDINET_CONFIG_H_
#define CREDINET_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credinet/metrics.h"
#include "credinet/model.h"

namespace credinet {

inline constexpr int kSchemaVersion = 1;

enum class Scenario { kRiskPrediction, kRecursiveScoring, kBoth };

std::string_view ScenarioName(Scenario s);

struct ExperimentConfig {
  ModelParams params;
  Scenario scenario = Scenario::kRecursiveScoring;
  PopulationMode population = PopulationMode::kUniform;
  std::vector<double> scores;  // explicit population
  Schedule u{0.0};             // attribute input shared by all clients
  std::map<int, Schedule> client_u;
  // Prior mean of the risk-prediction filter; score_cap / 2 when unset.
  std::optional<double> filter_prior_mean;
  std::vector<int> opt_out;
  CrlbAggregation crlb = CrlbAggregation::kMean;
  // Uniform populations are relabelled so client k holds the k-th smallest
  // score.
  bool sort_by_truth = true;
  int replications = 100;
  uint64_t seed = 42;
  bool write_trajectories = true;
  std::string preset;

  double PriorMean() const {
    return filter_prior_mean.value_or(params.score_cap / 2.0);
  }

  // Throws ValidationError for the first invalid field.
  void Validate() const;
};

// Config files are flat "key = value" lines; '#' starts a comment. Lists
// are comma separated. Per-client input schedules use keys "u.<client>".
// Unknown keys are rejected.
//
//   schema_version      1
//   scenario            risk_prediction | recursive_scoring | both
//   n_clients horizon replications seed
//   a b q r             schedule (one value = constant)
//   nu score_cap initial_belief_var filter_prior_mean
//   population          uniform | explicit     scores  list
//   u  u.<i>            schedules
//   opt_out             list of client indices
//   crlb_aggregation    mean | harmonic
//   sort_by_truth write_trajectories   true | false
//   preset              informational label
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfigFile(const std::string& path);

// Applies one key=value setting on top of `cfg` (also used for --set).
void ApplySetting(ExperimentConfig& cfg, std::string_view key,
                  std::string_view value);

// Canonical text; doubles use shortest round-trip form so that
// ParseConfig(SerializeConfig(c)) reproduces c exactly.
std::string SerializeConfig(const ExperimentConfig& cfg);

// Presets reproducing the numerical study: a = 1, b = 0, Q = 0, nu = 1,
// M = 15, T = 15, 100 replications, N = 50 or 100.
std::vector<std::string> PresetNames();
std::optional<ExperimentConfig> FindPreset(std::string_view name);

}  // namespace credinet

#endif  // CREDINET_CONFIG_H_
