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

#ifndef CREDINET_MODEL_H_
#define CREDINET_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "credinet/random.h"

namespace credinet {

// A per-step schedule. Index k past the end repeats the last value, so a
// single-element schedule is a constant.
class Schedule {
 public:
  Schedule() : values_{0.0} {}
  Schedule(double constant) : values_{constant} {}  // NOLINT: implicit
  explicit Schedule(std::vector<double> values);

  double operator[](std::size_t k) const {
    return k < values_.size() ? values_[k] : values_.back();
  }
  const std::vector<double>& values() const { return values_; }
  bool is_constant() const { return values_.size() == 1; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<double> values_;
};

// Scalar model constants. a, b and q are indexed by the step k = t - 1 that
// produces time t; r is indexed by the observation time t itself.
struct ModelParams {
  Schedule a{1.0};
  Schedule b{0.0};
  Schedule q{0.0};
  Schedule r{1.0};
  double nu = 1.0;
  double score_cap = 15.0;
  int n_clients = 50;
  int horizon = 15;
  double initial_belief_var = 1.0;

  // Throws ValidationError naming the first offending field.
  void Validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct GaussianBelief {
  double mean = 0.0;
  double variance = 1.0;

  double precision() const { return 1.0 / variance; }

  friend bool operator==(const GaussianBelief&, const GaussianBelief&) =
      default;
};

struct ClientTruth {
  double x = 0.0;
  Schedule u{0.0};
};

enum class PopulationMode { kUniform, kExplicit };

// x(t) = a x(t-1) + b u(t-1) + w, w ~ N(0, q). No clipping to [0, M].
double StepTruth(double x_prev, double u_prev, double a, double b, double q,
                 RandomStream& rng);

// y = x + v, v ~ N(0, r).
double Observe(double x, double r, RandomStream& rng);

// Uniform mode draws client i's score from its own population stream so
// that growing N leaves earlier clients untouched. Explicit mode copies
// `explicit_scores`, which must have n_clients entries inside [0, M].
std::vector<ClientTruth> InitPopulation(const ModelParams& params,
                                        PopulationMode mode,
                                        std::span<const double> explicit_scores,
                                        const StreamFactory& streams);

// Mean ~ N(x(0), p0), variance p0.
GaussianBelief InitBelief(const ClientTruth& truth, double p0,
                          RandomStream& rng);

}  // namespace credinet

#endif  // CREDINET_MODEL_H_
