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

#ifndef CREDINET_FILTER_H_
#define CREDINET_FILTER_H_

#include <span>
#include <vector>

#include "credinet/model.h"
#include "credinet/network.h"
#include "credinet/random.h"

namespace credinet {

// Risk-prediction filter. The evaluator observes each client's published
// noisy score y_i(t) (variance R_t) and which clients it linked to; every
// link to j contributes a unit-variance pseudo-observation at y_j(t).

struct Gains {
  double k = 0.0;  // weight on the client's own observation
  double h = 0.0;  // weight on each neighbor's observation
};

struct FilterState {
  GaussianBelief predicted;
  GaussianBelief posterior;
  Gains gains;
  int degree_used = 0;
};

GaussianBelief Predict(const GaussianBelief& prev_posterior, double a,
                       double b, double u, double q);

// K = P / (R + P + nRP), H = PR / (R + P + nRP).
Gains ComputeGains(double p_pred, double r, int n);

FilterState Update(const GaussianBelief& predicted, double y_i,
                   std::span<const double> neighbor_scores, double r);

// Product of Gaussian densities: precisions add, the mean is the
// precision-weighted average. Used as the independent reference for the
// closed-form updates.
GaussianBelief FuseGaussians(const GaussianBelief& prior,
                             std::span<const GaussianBelief> likelihood_terms);

struct FilterStep {
  double x_true = 0.0;
  double y_obs = 0.0;
  FilterState state;
};

struct FilterTrajectory {
  // steps[t][i] for t = 0..horizon.
  std::vector<std::vector<FilterStep>> steps;
  // Populated only when requested; networks[t] for t = 0..horizon.
  std::vector<NetworkSnapshot> networks;
};

struct FilterOptions {
  double prior_mean = 7.5;
  bool record_networks = false;
};

// At t = 0 the prior N(prior_mean, P0) is updated with z(0); afterwards each
// step evolves the truths, predicts, draws y(t) and the network, and updates.
FilterTrajectory RunFilter(const ModelParams& params,
                           std::span<const ClientTruth> truths,
                           const StreamFactory& streams,
                           const FilterOptions& options);

}  // namespace credinet

#endif  // CREDINET_FILTER_H_
