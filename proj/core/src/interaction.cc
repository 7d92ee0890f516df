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

#include "credinet/interaction.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "credinet/error.h"

namespace credinet {

GaussianBelief Publish(const GaussianBelief& prev_corrected, double a,
                       double b, double u, double q) {
  if (!(prev_corrected.variance > 0.0)) {
    throw ValidationError("variance", "must be > 0");
  }
  if (!(q >= 0.0)) throw ValidationError("q", "must be >= 0");
  return {a * prev_corrected.mean + b * u,
          a * a * prev_corrected.variance + q};
}

GaussianBelief Correct(const GaussianBelief& published,
                       std::span<const double> neighbor_published) {
  if (!(published.variance > 0.0)) {
    throw ValidationError("variance", "must be > 0");
  }
  const double n = static_cast<double>(neighbor_published.size());
  const double p_hat = published.variance / (1.0 + published.variance * n);
  double pull = 0.0;
  for (double s : neighbor_published) pull += s - published.mean;
  return {published.mean + p_hat * pull, p_hat};
}

InteractionTrajectory RunInteraction(const ModelParams& params,
                                     std::span<const ClientTruth> truths,
                                     const StreamFactory& streams,
                                     const InteractionOptions& options) {
  params.Validate();
  if (static_cast<int>(truths.size()) != params.n_clients) {
    throw ValidationError("n_clients", "population size mismatch");
  }
  const std::size_t n = truths.size();
  std::vector<bool> opted_out(n, false);
  for (int i : options.opt_out) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw ValidationError("opt_out", "client index " + std::to_string(i) +
                                           " out of range");
    }
    opted_out[static_cast<std::size_t>(i)] = true;
  }

  InteractionTrajectory out;
  out.steps.resize(static_cast<std::size_t>(params.horizon) + 1,
                   std::vector<InteractionStep>(n));

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = truths[i].x;
    RandomStream rng = streams.For(StreamPurpose::kInitialBelief, i, 0);
    const GaussianBelief initial =
        InitBelief(truths[i], params.initial_belief_var, rng);
    out.steps[0][i] = {x[i], initial, initial, 0, 0};
  }

  std::vector<double> published_means(n);
  std::vector<double> neighbor_published;
  neighbor_published.reserve(n);
  for (int t = 1; t <= params.horizon; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    const std::size_t k = ts - 1;
    const auto& prev = out.steps[ts - 1];
    auto& cur = out.steps[ts];

    for (std::size_t i = 0; i < n; ++i) {
      const double u = truths[i].u[k];
      RandomStream w = streams.For(StreamPurpose::kProcessNoise, i, ts);
      x[i] = StepTruth(x[i], u, params.a[k], params.b[k], params.q[k], w);
      cur[i].x_true = x[i];
      cur[i].published = Publish(prev[i].corrected, params.a[k], params.b[k],
                                 u, params.q[k]);
      published_means[i] = cur[i].published.mean;
    }

    NetworkSnapshot snap =
        SampleNetwork(x, published_means, params.nu, t, streams);

    for (std::size_t i = 0; i < n; ++i) {
      neighbor_published.clear();
      for (int j : snap.Neighbors(static_cast<int>(i))) {
        neighbor_published.push_back(published_means[static_cast<std::size_t>(j)]);
      }
      cur[i].degree = static_cast<int>(neighbor_published.size());
      if (opted_out[i]) {
        cur[i].corrected = cur[i].published;
        cur[i].degree_used = 0;
      } else {
        cur[i].corrected = Correct(cur[i].published, neighbor_published);
        cur[i].degree_used = cur[i].degree;
      }
    }
    if (options.record_networks) out.networks.push_back(std::move(snap));
  }
  return out;
}

double PredictionBound(double m0, std::span<const double> a,
                       std::span<const double> bu, int t) {
  if (t < 0) throw ValidationError("t", "must be >= 0");
  const auto steps = static_cast<std::size_t>(t);
  if (a.size() < steps || bu.size() < steps) {
    throw ValidationError("a", "schedule shorter than t");
  }
  for (std::size_t k = 0; k < steps; ++k) {
    if (!(a[k] > 0.0 && a[k] < 1.0)) {
      throw ValidationError("a", "bound not applicable: a(" +
                                     std::to_string(k) + ") = " +
                                     std::to_string(a[k]) +
                                     " is not in (0, 1)");
    }
  }
  // Horner-style accumulation: bound(k + 1) = a(k) bound(k) + |bu(k)|.
  double bound = std::abs(m0);
  for (std::size_t k = 0; k < steps; ++k) {
    bound = a[k] * bound + std::abs(bu[k]);
  }
  return bound;
}

PrecisionBounds ComputePrecisionBounds(double q_l, double q_u, int n_clients,
                                       std::span<const double> a, double p0,
                                       std::span<const int> degree_history) {
  if (!(p0 > 0.0)) throw ValidationError("initial_belief_var", "must be > 0");
  if (!(q_u >= q_l) || q_u < 0.0) {
    throw ValidationError("q_u", "must satisfy q_u >= max(q_l, 0)");
  }
  if (n_clients < 1) throw ValidationError("n_clients", "must be >= 1");
  const std::size_t t = degree_history.size();
  if (a.size() < t) throw ValidationError("a", "schedule shorter than t");

  PrecisionBounds out;
  const double inv_lower = q_l > 0.0 ? 1.0 / q_l + n_clients : HUGE_VAL;
  if (q_l > 0.0) {
    out.lower = 1.0 / inv_lower;
    if (1.0 / p0 > inv_lower) {
      throw ValidationError("initial_belief_var",
                            "precision upper bound requires p0 >= (1/q_l + N)^-1");
    }
  } else {
    out.lower = 0.0;
    out.lower_degenerate = true;
  }

  double a_max = 0.0;
  for (std::size_t k = 0; k < t; ++k) a_max = std::max(a_max, a[k]);
  const double noise_term = q_u > 0.0 ? inv_lower * q_u : 0.0;
  const double m0 = 1.0 / (a_max * a_max + noise_term);

  double info = std::pow(m0, static_cast<double>(t)) / p0;
  double weight = 1.0;
  for (std::size_t k = 0; k < t; ++k) {
    info += weight * degree_history[t - 1 - k];
    weight *= m0;
  }
  out.upper = 1.0 / info;
  return out;
}

}  // namespace credinet
