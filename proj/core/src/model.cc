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

#include "credinet/model.h"

#include <cmath>
#include <string>
#include <utility>

#include "credinet/error.h"

namespace credinet {
namespace {

void CheckSchedule(const Schedule& s, const char* field, double lo,
                   bool lo_open, double hi, const char* range) {
  for (double v : s.values()) {
    const bool below = lo_open ? !(v > lo) : !(v >= lo);
    if (below || !(v <= hi) || std::isnan(v)) {
      throw ValidationError(field, "value " + std::to_string(v) +
                                       " outside valid range " + range);
    }
  }
}

}  // namespace

Schedule::Schedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("schedule", "must not be empty");
}

void ModelParams::Validate() const {
  const double inf = HUGE_VAL;
  CheckSchedule(a, "a", 0.0, true, 1.0, "(0, 1]");
  CheckSchedule(b, "b", 0.0, false, inf, "[0, inf)");
  CheckSchedule(q, "q", 0.0, false, inf, "[0, inf)");
  CheckSchedule(r, "r", 0.0, true, inf, "(0, inf)");
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw ValidationError("nu", "value " + std::to_string(nu) +
                                    " outside valid range (0, 1]");
  }
  if (!(score_cap > 0.0) || !std::isfinite(score_cap)) {
    throw ValidationError("score_cap", "must be finite and > 0");
  }
  if (n_clients < 1) throw ValidationError("n_clients", "must be >= 1");
  if (horizon < 1) throw ValidationError("horizon", "must be >= 1");
  if (!(initial_belief_var > 0.0) || !std::isfinite(initial_belief_var)) {
    throw ValidationError("initial_belief_var", "must be finite and > 0");
  }
}

double StepTruth(double x_prev, double u_prev, double a, double b, double q,
                 RandomStream& rng) {
  if (!(q >= 0.0)) throw ValidationError("q", "process variance must be >= 0");
  if (!(a > 0.0 && a <= 1.0)) throw ValidationError("a", "must lie in (0, 1]");
  const double drift = a * x_prev + b * u_prev;
  return q == 0.0 ? drift : drift + std::sqrt(q) * rng.Gaussian();
}

double Observe(double x, double r, RandomStream& rng) {
  if (!(r > 0.0)) throw ValidationError("r", "observation variance must be > 0");
  return x + std::sqrt(r) * rng.Gaussian();
}

std::vector<ClientTruth> InitPopulation(const ModelParams& params,
                                        PopulationMode mode,
                                        std::span<const double> explicit_scores,
                                        const StreamFactory& streams) {
  std::vector<ClientTruth> truths(static_cast<std::size_t>(params.n_clients));
  if (mode == PopulationMode::kExplicit) {
    if (explicit_scores.size() != truths.size()) {
      throw ValidationError("scores", "expected " + std::to_string(truths.size()) +
                                          " scores, got " +
                                          std::to_string(explicit_scores.size()));
    }
    for (std::size_t i = 0; i < truths.size(); ++i) {
      const double x = explicit_scores[i];
      if (!(x >= 0.0 && x <= params.score_cap)) {
        throw ValidationError("scores", "score " + std::to_string(x) +
                                            " outside [0, score_cap]");
      }
      truths[i].x = x;
    }
    return truths;
  }
  for (std::size_t i = 0; i < truths.size(); ++i) {
    RandomStream rng = streams.For(StreamPurpose::kPopulation, i, 0);
    truths[i].x = rng.Uniform(0.0, params.score_cap);
  }
  return truths;
}

GaussianBelief InitBelief(const ClientTruth& truth, double p0,
                          RandomStream& rng) {
  if (!(p0 > 0.0)) throw ValidationError("initial_belief_var", "must be > 0");
  return {truth.x + std::sqrt(p0) * rng.Gaussian(), p0};
}

}  // namespace credinet
