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

#include "credinet/filter.h"

#include <cstddef>

#include "credinet/error.h"

namespace credinet {
namespace {

void RequirePositive(double v, const char* field) {
  if (!(v > 0.0)) throw ValidationError(field, "must be > 0");
}

}  // namespace

GaussianBelief Predict(const GaussianBelief& prev_posterior, double a,
                       double b, double u, double q) {
  RequirePositive(prev_posterior.variance, "variance");
  if (!(q >= 0.0)) throw ValidationError("q", "must be >= 0");
  return {a * prev_posterior.mean + b * u,
          a * a * prev_posterior.variance + q};
}

Gains ComputeGains(double p_pred, double r, int n) {
  RequirePositive(p_pred, "variance");
  RequirePositive(r, "r");
  if (n < 0) throw ValidationError("degree", "must be >= 0");
  const double denom = r + p_pred + n * r * p_pred;
  return {p_pred / denom, p_pred * r / denom};
}

FilterState Update(const GaussianBelief& predicted, double y_i,
                   std::span<const double> neighbor_scores, double r) {
  const int n = static_cast<int>(neighbor_scores.size());
  const Gains g = ComputeGains(predicted.variance, r, n);
  const double m = predicted.mean;
  double pull = 0.0;
  for (double y_j : neighbor_scores) pull += y_j - m;

  FilterState state;
  state.predicted = predicted;
  state.gains = g;
  state.degree_used = n;
  state.posterior.mean = m + g.k * (y_i - m) + g.h * pull;
  // (1 - K - nH) P, written without the cancellation.
  state.posterior.variance =
      r * predicted.variance / (r + predicted.variance + n * r * predicted.variance);
  return state;
}

GaussianBelief FuseGaussians(const GaussianBelief& prior,
                             std::span<const GaussianBelief> likelihood_terms) {
  RequirePositive(prior.variance, "variance");
  double precision = prior.precision();
  double weighted = prior.mean * precision;
  for (const auto& term : likelihood_terms) {
    RequirePositive(term.variance, "variance");
    precision += term.precision();
    weighted += term.mean * term.precision();
  }
  if (likelihood_terms.empty()) return prior;
  return {weighted / precision, 1.0 / precision};
}

FilterTrajectory RunFilter(const ModelParams& params,
                           std::span<const ClientTruth> truths,
                           const StreamFactory& streams,
                           const FilterOptions& options) {
  params.Validate();
  const int n_clients = static_cast<int>(truths.size());
  if (n_clients != params.n_clients) {
    throw ValidationError("n_clients", "population size mismatch");
  }
  const auto n = static_cast<std::size_t>(n_clients);

  FilterTrajectory out;
  out.steps.resize(static_cast<std::size_t>(params.horizon) + 1,
                   std::vector<FilterStep>(n));

  std::vector<double> x(n);
  std::vector<double> y(n);
  std::vector<GaussianBelief> predicted(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = truths[i].x;
    predicted[i] = {options.prior_mean, params.initial_belief_var};
  }

  std::vector<double> neighbor_scores;
  neighbor_scores.reserve(n);
  for (int t = 0; t <= params.horizon; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    if (t > 0) {
      const std::size_t k = ts - 1;
      for (std::size_t i = 0; i < n; ++i) {
        const double u = truths[i].u[k];
        RandomStream w = streams.For(StreamPurpose::kProcessNoise, i, ts);
        x[i] = StepTruth(x[i], u, params.a[k], params.b[k], params.q[k], w);
        predicted[i] = Predict(out.steps[ts - 1][i].state.posterior,
                               params.a[k], params.b[k], u, params.q[k]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      RandomStream v = streams.For(StreamPurpose::kObservation, i, ts);
      y[i] = Observe(x[i], params.r[ts], v);
    }
    NetworkSnapshot snap = SampleNetwork(x, y, params.nu, t, streams);
    for (std::size_t i = 0; i < n; ++i) {
      neighbor_scores.clear();
      for (int j : snap.Neighbors(static_cast<int>(i))) {
        neighbor_scores.push_back(y[static_cast<std::size_t>(j)]);
      }
      FilterStep& step = out.steps[ts][i];
      step.x_true = x[i];
      step.y_obs = y[i];
      step.state = Update(predicted[i], y[i], neighbor_scores, params.r[ts]);
    }
    if (options.record_networks) out.networks.push_back(std::move(snap));
  }
  return out;
}

}  // namespace credinet
