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

// Acceptance gate. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "credinet/config.h"
#include "credinet/experiments.h"
#include "credinet/filter.h"
#include "credinet/interaction.h"
#include "credinet/metrics.h"
#include "credinet/random.h"
#include "support/reference.h"

namespace credinet {
namespace {

namespace fs = std::filesystem;
namespace ts = testing_support;

struct Verdict {
  bool ok = true;
  std::string detail;
};

ExperimentConfig Preset(const char* name) {
  ExperimentConfig cfg = *FindPreset(name);
  cfg.write_trajectories = false;
  return cfg;
}

std::string Fmt(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

Verdict OracleEquivalence() {
  RandomStream rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto c = ts::RandomUpdateCase(rng);
    const auto f = Update(c.prior, c.y, c.neighbors, c.r).posterior;
    const auto fo = ts::FilterOracle(c);
    const auto g = Correct(c.prior, c.neighbors);
    const auto go = ts::CorrectionOracle(c);
    worst = std::max({worst, std::abs(f.mean - fo.mean),
                      std::abs(f.variance - fo.variance),
                      std::abs(g.mean - go.mean),
                      std::abs(g.variance - go.variance)});
  }
  return {worst <= 1e-10, Fmt("max abs deviation %.3g over 10000 cases", worst)};
}

Verdict StrictImprovement() {
  RandomStream cfg_rng(2002);
  long checked = 0;
  long violations = 0;
  for (int run = 0; run < 100; ++run) {
    ModelParams p;
    p.n_clients = 1 + static_cast<int>(cfg_rng.Uniform() * 80.0);
    p.horizon = 15;
    p.a = Schedule(cfg_rng.Uniform(0.3, 1.0));
    p.b = Schedule(cfg_rng.Uniform(0.0, 1.0));
    p.q = Schedule(cfg_rng.Uniform(0.0, 1.0));
    std::vector<double> r(16);
    for (double& v : r) v = std::exp(cfg_rng.Uniform(-3.0, 1.5));
    p.r = Schedule(r);
    p.nu = cfg_rng.Uniform(0.1, 1.0);
    p.initial_belief_var = std::exp(cfg_rng.Uniform(-2.0, 2.0));
    const StreamFactory streams(3000 + run, 0);
    auto truths = InitPopulation(p, PopulationMode::kUniform, {}, streams);
    for (auto& c : truths) c.u = Schedule(cfg_rng.Uniform(-1.0, 1.0));
    const auto traj = RunFilter(p, truths, streams, {7.5, false});
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      for (const auto& s : traj.steps[t]) {
        ++checked;
        if (!(s.state.posterior.variance < p.r[t])) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " +
                               std::to_string(checked) + " steps"};
}

Verdict CrlbDomination() {
  const ExperimentResult res = RunExperiment(Preset("paper-n100"));
  long checked = 0;
  double worst = 0.0;
  for (const auto& run : res.interaction_runs) {
    for (std::size_t t = 1; t < run.steps.size(); ++t) {
      for (const auto& s : run.steps[t]) {
        if (s.degree_used < 1) continue;
        ++checked;
        worst = std::max(worst, s.corrected.variance * s.degree_used);
      }
    }
  }
  return {checked > 0 && worst < 1.0,
          Fmt("max P_hat*n = %.6f over %.0f linked steps", worst,
              static_cast<double>(checked))};
}

Verdict MiddleClass() {
  const ExperimentResult res = RunExperiment(Preset("paper-n100"));
  const McSummary& s = *res.Summary("recursive_scoring");
  const int t = s.n_steps - 1;
  int band = 0;
  int below = 0;
  double bias_sum = 0.0;
  double worst_ratio = 0.0;
  for (int c = 0; c < s.n_clients; ++c) {
    const SummaryRow& row = s.At(t, c);
    if (row.x_true < 4.0 || row.x_true > 12.0) continue;
    ++band;
    bias_sum += row.bias;
    if (row.mse < row.crlb) ++below;
    worst_ratio = std::max(worst_ratio, row.mse / row.crlb);
  }
  const double mean_bias = band ? bias_sum / band : 0.0;
  const bool ok = band > 0 && below == band && std::abs(mean_bias) < 0.15;
  return {ok, std::to_string(below) + "/" + std::to_string(band) +
                  " band clients with MSE < CRLB" +
                  Fmt(" (max MSE/CRLB %.3f), mean bias %.4f", worst_ratio,
                      mean_bias)};
}

Verdict BoundarySigns() {
  const ExperimentResult res = RunExperiment(Preset("paper-n50"));
  const McSummary& s = *res.Summary("recursive_scoring");
  const int t = s.n_steps - 1;
  int low = 0, low_ok = 0, high = 0, high_ok = 0;
  for (int c = 0; c < s.n_clients; ++c) {
    const SummaryRow& row = s.At(t, c);
    if (row.x_true < 4.0) {
      ++low;
      if (row.box.median > 0.0) ++low_ok;
    } else if (row.x_true > 12.0) {
      ++high;
      if (row.box.median < 0.0) ++high_ok;
    }
  }
  const int total = low + high;
  const double share =
      total ? static_cast<double>(low_ok + high_ok) / total : 0.0;
  return {total > 0 && share >= 0.9,
          Fmt("%.1f%% of boundary clients with the expected sign", 100.0 * share) +
              " (low " + std::to_string(low_ok) + "/" + std::to_string(low) +
              ", high " + std::to_string(high_ok) + "/" +
              std::to_string(high) + ")"};
}

Verdict VarianceMonotone() {
  const ExperimentResult res = RunExperiment(Preset("paper-n100"));
  long increases = 0;
  for (const auto& run : res.interaction_runs) {
    for (std::size_t t = 1; t < run.steps.size(); ++t) {
      for (std::size_t i = 0; i < run.steps[t].size(); ++i) {
        if (run.steps[t][i].corrected.variance >
            run.steps[t - 1][i].corrected.variance) {
          ++increases;
        }
      }
    }
  }

  // Noisy dynamics with Q_t in [q_l, q_u]: realised P_hat above P_l.
  ExperimentConfig cfg = Preset("paper-n100");
  cfg.replications = 30;
  const double q_l = 0.1;
  const double q_u = 0.3;
  std::vector<double> q(15);
  RandomStream rng(6006);
  for (double& v : q) v = rng.Uniform(q_l, q_u);
  cfg.params.q = Schedule(q);
  cfg.params.a = Schedule(0.9);
  const ExperimentResult noisy = RunExperiment(cfg);
  const double lower =
      ComputePrecisionBounds(q_l, q_u, cfg.params.n_clients,
                             std::vector<double>(15, 0.9),
                             cfg.params.initial_belief_var, {})
          .lower;
  long under = 0;
  for (const auto& run : noisy.interaction_runs) {
    for (std::size_t t = 1; t < run.steps.size(); ++t) {
      for (const auto& s : run.steps[t]) {
        if (s.corrected.variance < lower) ++under;
      }
    }
  }
  return {increases == 0 && under == 0,
          std::to_string(increases) + " increases under the preset, " +
              std::to_string(under) + Fmt(" steps below P_l = %.6f", lower)};
}

Verdict KalmanReduction() {
  ModelParams p;
  p.n_clients = 1;
  p.horizon = 49;
  p.a = Schedule(0.97);
  p.b = Schedule(0.5);
  p.q = Schedule(0.2);
  p.r = Schedule(0.7);
  p.initial_belief_var = 1.3;
  const double u = 0.4;
  const std::vector<ClientTruth> truths{{6.0, Schedule(u)}};
  const auto traj = RunFilter(p, truths, StreamFactory(7007, 0), {7.5, false});
  std::vector<double> ys;
  for (const auto& row : traj.steps) ys.push_back(row[0].y_obs);
  const auto ref = ts::ScalarKalman(p, 7.5, ys, u);
  double worst = 0.0;
  for (std::size_t t = 0; t < ys.size(); ++t) {
    const auto& post = traj.steps[t][0].state.posterior;
    worst = std::max({worst, std::abs(post.mean - ref[t].mean),
                      std::abs(post.variance - ref[t].variance)});
  }
  return {ys.size() == 50 && worst <= 1e-12,
          Fmt("max deviation %.3g over %.0f steps", worst,
              static_cast<double>(ys.size()))};
}

Verdict BoundSandwich() {
  RandomStream cfg_rng(8008);
  long checked = 0;
  long violations = 0;
  for (int run = 0; run < 200; ++run) {
    ModelParams p;
    p.n_clients = 5 + static_cast<int>(cfg_rng.Uniform() * 56.0);
    p.horizon = 15;
    p.nu = cfg_rng.Uniform(0.2, 1.0);
    double q_l = cfg_rng.Uniform(0.01, 0.99);
    double q_u = cfg_rng.Uniform(0.01, 0.99);
    if (q_l > q_u) std::swap(q_l, q_u);
    std::vector<double> a(15), b(15), q(15);
    for (int k = 0; k < 15; ++k) {
      a[k] = cfg_rng.Uniform(0.2, 0.95);
      b[k] = cfg_rng.Uniform(0.0, 1.0);
      q[k] = cfg_rng.Uniform(q_l, q_u);
    }
    p.a = Schedule(a);
    p.b = Schedule(b);
    p.q = Schedule(q);
    const StreamFactory streams(9000 + run, 0);
    auto truths = InitPopulation(p, PopulationMode::kUniform, {}, streams);
    std::vector<double> bu(15, 0.0);
    for (auto& c : truths) {
      std::vector<double> u(15);
      for (int k = 0; k < 15; ++k) {
        u[k] = cfg_rng.Uniform(-2.0, 2.0);
        bu[k] = std::max(bu[k], std::abs(b[k] * u[k]));
      }
      c.u = Schedule(u);
    }
    const auto traj = RunInteraction(p, truths, streams, {});
    double m0 = 0.0;
    for (const auto& s : traj.steps[0]) {
      m0 = std::max(m0, std::abs(s.published.mean));
    }
    for (std::size_t i = 0; i < truths.size(); ++i) {
      std::vector<int> hist;
      for (int t = 1; t <= p.horizon; ++t) {
        const auto& s = traj.steps[static_cast<std::size_t>(t)][i];
        hist.push_back(s.degree_used);
        const double pred = PredictionBound(m0, a, bu, t);
        const auto prec = ComputePrecisionBounds(
            q_l, q_u, p.n_clients, a, p.initial_belief_var, hist);
        checked += 2;
        if (std::abs(s.published.mean) > pred * (1.0 + 1e-12)) ++violations;
        if (s.corrected.variance < prec.lower * (1.0 - 1e-12) ||
            s.corrected.variance > prec.upper * (1.0 + 1e-12)) {
          ++violations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " +
                               std::to_string(checked) + " bound checks"};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict Determinism() {
  const fs::path root = fs::temp_directory_path() / "credinet_acceptance";
  fs::remove_all(root);
  int files = 0;
  int differing = 0;
  for (const char* name : {"paper-n50", "paper-n100"}) {
    ExperimentConfig cfg = *FindPreset(name);
    cfg.scenario = Scenario::kBoth;
    const fs::path first = root / name / "first";
    const fs::path second = root / name / "second";
    const auto written = WriteExperiment(RunExperiment(cfg), first.string());
    const ExperimentConfig replay =
        LoadConfigFile((first / "manifest.cfg").string());
    RunOptions opts;
    opts.threads = 3;
    WriteExperiment(RunExperiment(replay, opts), second.string());
    for (const auto& f : written) {
      ++files;
      if (Slurp(first / f) != Slurp(second / f)) ++differing;
    }
  }
  fs::remove_all(root);
  return {files > 0 && differing == 0,
          std::to_string(differing) + " of " + std::to_string(files) +
              " CSV files differ after a manifest re-run"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Verdict()> check;
};

}  // namespace
}  // namespace credinet

int main() {
  using namespace credinet;
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 1.0, OracleEquivalence},
      {2, "posterior variance below R", 5.0, StrictImprovement},
      {3, "corrected variance below CRLB", 10.0, CrlbDomination},
      {4, "middle-class MSE below CRLB, small bias", 30.0, MiddleClass},
      {5, "boundary bias signs", 15.0, BoundarySigns},
      {6, "variance monotone, above lower bound", 10.0, VarianceMonotone},
      {7, "scalar Kalman reduction", 1.0, KalmanReduction},
      {8, "prediction and precision bounds sandwich", 30.0, BoundSandwich},
      {9, "manifest re-run byte-identical", 600.0, Determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = secs <= c.limit_s;
    const bool ok = v.ok && in_time;
    if (!ok) ++failed;
    std::printf("[%s] %d %s: %s; %.2f s (limit %.0f s)%s\n",
                ok ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                c.limit_s, in_time ? "" : " TIMEOUT");
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
