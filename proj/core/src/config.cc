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

#include "credinet/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "credinet/error.h"

namespace credinet {
namespace {

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitList(std::string_view value) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(Trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view text) {
  text = Trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(std::string(key),
                          "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

template <typename Int>
Int ParseInt(std::string_view key, std::string_view text) {
  text = Trim(text);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(std::string(key),
                          "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ValidationError(std::string(key), "expected true or false");
}

std::vector<double> ParseDoubles(std::string_view key, std::string_view value) {
  std::vector<double> out;
  if (Trim(value).empty()) return out;
  for (auto item : SplitList(value)) out.push_back(ParseDouble(key, item));
  return out;
}

Schedule ParseSchedule(std::string_view key, std::string_view value) {
  auto values = ParseDoubles(key, value);
  if (values.empty()) {
    throw ValidationError(std::string(key), "schedule must not be empty");
  }
  return Schedule(std::move(values));
}

std::string Num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string Join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += Num(values[i]);
  }
  return out;
}

}  // namespace

std::string_view ScenarioName(Scenario s) {
  switch (s) {
    case Scenario::kRiskPrediction:
      return "risk_prediction";
    case Scenario::kRecursiveScoring:
      return "recursive_scoring";
    case Scenario::kBoth:
      return "both";
  }
  return "unknown";
}

void ExperimentConfig::Validate() const {
  params.Validate();
  if (replications < 1) throw ValidationError("replications", "must be >= 1");
  if (population == PopulationMode::kExplicit) {
    if (scores.size() != static_cast<std::size_t>(params.n_clients)) {
      throw ValidationError("scores", "explicit population needs n_clients = " +
                                          std::to_string(params.n_clients) +
                                          " scores, got " +
                                          std::to_string(scores.size()));
    }
    for (double x : scores) {
      if (!(x >= 0.0 && x <= params.score_cap)) {
        throw ValidationError("scores", "score " + Num(x) +
                                            " outside [0, score_cap]");
      }
    }
  }
  for (const auto& [client, schedule] : client_u) {
    if (client < 0 || client >= params.n_clients) {
      throw ValidationError("u." + std::to_string(client),
                            "client index out of range");
    }
  }
  for (int i : opt_out) {
    if (i < 0 || i >= params.n_clients) {
      throw ValidationError("opt_out", "client index " + std::to_string(i) +
                                           " out of range");
    }
  }
  if (filter_prior_mean && !std::isfinite(*filter_prior_mean)) {
    throw ValidationError("filter_prior_mean", "must be finite");
  }
}

void ApplySetting(ExperimentConfig& cfg, std::string_view key,
                  std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  const std::string k(key);
  if (key == "schema_version") {
    if (ParseInt<int>(key, value) != kSchemaVersion) {
      throw ValidationError(k, "unsupported schema version '" +
                                   std::string(value) + "', expected " +
                                   std::to_string(kSchemaVersion));
    }
  } else if (key == "scenario") {
    if (value == "risk_prediction") {
      cfg.scenario = Scenario::kRiskPrediction;
    } else if (value == "recursive_scoring") {
      cfg.scenario = Scenario::kRecursiveScoring;
    } else if (value == "both") {
      cfg.scenario = Scenario::kBoth;
    } else {
      throw ValidationError(k, "expected risk_prediction, recursive_scoring or both");
    }
  } else if (key == "n_clients") {
    cfg.params.n_clients = ParseInt<int>(key, value);
  } else if (key == "horizon") {
    cfg.params.horizon = ParseInt<int>(key, value);
  } else if (key == "replications") {
    cfg.replications = ParseInt<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = ParseInt<uint64_t>(key, value);
  } else if (key == "a") {
    cfg.params.a = ParseSchedule(key, value);
  } else if (key == "b") {
    cfg.params.b = ParseSchedule(key, value);
  } else if (key == "q") {
    cfg.params.q = ParseSchedule(key, value);
  } else if (key == "r") {
    cfg.params.r = ParseSchedule(key, value);
  } else if (key == "nu") {
    cfg.params.nu = ParseDouble(key, value);
  } else if (key == "score_cap") {
    cfg.params.score_cap = ParseDouble(key, value);
  } else if (key == "initial_belief_var") {
    cfg.params.initial_belief_var = ParseDouble(key, value);
  } else if (key == "filter_prior_mean") {
    if (value.empty() || value == "auto") {
      cfg.filter_prior_mean.reset();
    } else {
      cfg.filter_prior_mean = ParseDouble(key, value);
    }
  } else if (key == "population") {
    if (value == "uniform") {
      cfg.population = PopulationMode::kUniform;
    } else if (value == "explicit") {
      cfg.population = PopulationMode::kExplicit;
    } else {
      throw ValidationError(k, "expected uniform or explicit");
    }
  } else if (key == "scores") {
    cfg.scores = ParseDoubles(key, value);
  } else if (key == "u") {
    cfg.u = ParseSchedule(key, value);
  } else if (key.starts_with("u.")) {
    const int client = ParseInt<int>(key, key.substr(2));
    cfg.client_u[client] = ParseSchedule(key, value);
  } else if (key == "opt_out") {
    cfg.opt_out.clear();
    if (!value.empty()) {
      for (auto item : SplitList(value)) {
        cfg.opt_out.push_back(ParseInt<int>(key, item));
      }
    }
  } else if (key == "crlb_aggregation") {
    if (value == "mean") {
      cfg.crlb = CrlbAggregation::kMean;
    } else if (value == "harmonic") {
      cfg.crlb = CrlbAggregation::kHarmonic;
    } else {
      throw ValidationError(k, "expected mean or harmonic");
    }
  } else if (key == "sort_by_truth") {
    cfg.sort_by_truth = ParseBool(key, value);
  } else if (key == "write_trajectories") {
    cfg.write_trajectories = ParseBool(key, value);
  } else if (key == "preset") {
    cfg.preset = std::string(value);
  } else {
    throw ValidationError(k, "unknown configuration key");
  }
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("line " + std::to_string(line_no),
                            "expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (!seen.insert(key).second) {
      throw ValidationError(key, "duplicate key on line " + std::to_string(line_no));
    }
    ApplySetting(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string SerializeConfig(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto& p = cfg.params;
  out << "schema_version = " << kSchemaVersion << '\n';
  if (!cfg.preset.empty()) out << "preset = " << cfg.preset << '\n';
  out << "scenario = " << ScenarioName(cfg.scenario) << '\n';
  out << "n_clients = " << p.n_clients << '\n';
  out << "horizon = " << p.horizon << '\n';
  out << "replications = " << cfg.replications << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "a = " << Join(p.a.values()) << '\n';
  out << "b = " << Join(p.b.values()) << '\n';
  out << "q = " << Join(p.q.values()) << '\n';
  out << "r = " << Join(p.r.values()) << '\n';
  out << "nu = " << Num(p.nu) << '\n';
  out << "score_cap = " << Num(p.score_cap) << '\n';
  out << "initial_belief_var = " << Num(p.initial_belief_var) << '\n';
  out << "filter_prior_mean = "
      << (cfg.filter_prior_mean ? Num(*cfg.filter_prior_mean) : "auto") << '\n';
  out << "population = "
      << (cfg.population == PopulationMode::kUniform ? "uniform" : "explicit")
      << '\n';
  if (cfg.population == PopulationMode::kExplicit) {
    out << "scores = " << Join(cfg.scores) << '\n';
  }
  out << "u = " << Join(cfg.u.values()) << '\n';
  for (const auto& [client, schedule] : cfg.client_u) {
    out << "u." << client << " = " << Join(schedule.values()) << '\n';
  }
  if (!cfg.opt_out.empty()) {
    out << "opt_out = ";
    for (std::size_t i = 0; i < cfg.opt_out.size(); ++i) {
      out << (i ? ", " : "") << cfg.opt_out[i];
    }
    out << '\n';
  }
  out << "crlb_aggregation = "
      << (cfg.crlb == CrlbAggregation::kMean ? "mean" : "harmonic") << '\n';
  out << "sort_by_truth = " << (cfg.sort_by_truth ? "true" : "false") << '\n';
  out << "write_trajectories = " << (cfg.write_trajectories ? "true" : "false")
      << '\n';
  return out.str();
}

std::vector<std::string> PresetNames() { return {"paper-n50", "paper-n100"}; }

std::optional<ExperimentConfig> FindPreset(std::string_view name) {
  int n = 0;
  if (name == "paper-n50") {
    n = 50;
  } else if (name == "paper-n100") {
    n = 100;
  } else {
    return std::nullopt;
  }
  ExperimentConfig cfg;
  cfg.preset = std::string(name);
  cfg.scenario = Scenario::kRecursiveScoring;
  cfg.params.n_clients = n;
  cfg.params.horizon = 15;
  cfg.params.a = Schedule(1.0);
  cfg.params.b = Schedule(0.0);
  cfg.params.q = Schedule(0.0);
  cfg.params.r = Schedule(1.0);
  cfg.params.nu = 1.0;
  cfg.params.score_cap = 15.0;
  cfg.params.initial_belief_var = 1.0;
  cfg.population = PopulationMode::kUniform;
  cfg.replications = 100;
  return cfg;
}

}  // namespace credinet
