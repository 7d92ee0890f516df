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

#ifndef CREDINET_INTERACTION_H_
#define CREDINET_INTERACTION_H_

#include <span>
#include <vector>

#include "credinet/model.h"
#include "credinet/network.h"
#include "credinet/random.h"

namespace credinet {

// Recursive scoring loop. Each period: truths evolve, the lender publishes
// x̄ = a x̂ + b u, clients link using their true score against published
// scores, and the lender corrects every published score with the Bayes
// posterior under the published prior and the observed links.

GaussianBelief Publish(const GaussianBelief& prev_corrected, double a,
                       double b, double u, double q);

// P̂ = P̄ / (1 + P̄ n), x̂ = x̄ + P̂ Σ (x̄_j - x̄).
GaussianBelief Correct(const GaussianBelief& published,
                       std::span<const double> neighbor_published);

struct InteractionStep {
  double x_true = 0.0;
  GaussianBelief published;
  GaussianBelief corrected;
  int degree = 0;       // out-degree in this period's network
  int degree_used = 0;  // links used by the correction (0 when opted out)
};

struct InteractionTrajectory {
  // steps[t][i] for t = 0..horizon. At t = 0 published == corrected is the
  // initial estimate and no network exists.
  std::vector<std::vector<InteractionStep>> steps;
  // networks[t - 1] for t = 1..horizon, when requested.
  std::vector<NetworkSnapshot> networks;
};

struct InteractionOptions {
  // Clients whose correction step is skipped (attribute-only scoring).
  std::vector<int> opt_out;
  bool record_networks = false;
};

InteractionTrajectory RunInteraction(const ModelParams& params,
                                     std::span<const ClientTruth> truths,
                                     const StreamFactory& streams,
                                     const InteractionOptions& options);

// Bound on |x̄(t)| when every a(k) < 1:
//   M0 Π_{k<t} a(k) + Σ_{k<t} (Π_{k<l<t} a(l)) |b(k) u(k)|.
// `bu` holds max over clients of |b(k) u_i(k)|. Throws ValidationError if
// some a(k) is outside (0, 1).
double PredictionBound(double m0, std::span<const double> a,
                       std::span<const double> bu, int t);

struct PrecisionBounds {
  double lower = 0.0;  // valid for t >= 1
  double upper = 0.0;
  bool lower_degenerate = false;  // q_l <= 0: lower reported as 0
};

// Sandwich for P̂_i(t) under Q_l <= Q_k <= Q_u:
//   P_l = (1/Q_l + N)^-1
//   P_u = (m0^t / P̂(0) + Σ_{k<t} m0^k n(t-k))^-1,
//   m0  = 1 / (ā² + (1/Q_l + N) Q_u),  ā = max_{k<t} a(k).
// `degree_history[s - 1]` is n_i(s) for s = 1..t, so t = its size. With
// Q_u = 0 the noise term vanishes and m0 = 1/ā². The upper bound needs
// P̂(0) >= P_l; a violation throws ValidationError.
PrecisionBounds ComputePrecisionBounds(double q_l, double q_u, int n_clients,
                                       std::span<const double> a, double p0,
                                       std::span<const int> degree_history);

}  // namespace credinet

#endif  // CREDINET_INTERACTION_H_
