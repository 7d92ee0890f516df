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

#ifndef CREDINET_METRICS_H_
#define CREDINET_METRICS_H_

#include <span>
#include <string>
#include <vector>

namespace credinet {

// Fisher information of x_i carried by n unit-variance link likelihoods.
double FisherInformation(int n);

// 1/n, or +inf when the client has no links.
double Crlb(int n);

struct EstimateSample {
  double estimate = 0.0;
  double truth = 0.0;
  int degree = 0;
};

// grid[t][client] for one replication.
using EstimateGrid = std::vector<std::vector<EstimateSample>>;

struct BoxStats {
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::vector<double> outliers;  // outside [q25 - 1.5 IQR, q75 + 1.5 IQR]
};

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double Quantile(std::span<const double> sorted, double p);
BoxStats ComputeBoxStats(std::span<const double> values);

// How the per-replication CRLB 1/n is combined across replications.
enum class CrlbAggregation { kMean, kHarmonic };

struct SummaryRow {
  int client = 0;
  int t = 0;
  double x_true = 0.0;  // truth averaged over replications
  double bias = 0.0;
  double variance = 0.0;  // population variance of the error
  double mse = 0.0;
  double crlb = 0.0;
  BoxStats box;
};

struct McSummary {
  std::string estimator;
  std::vector<SummaryRow> rows;  // ordered by (t, client)

  const SummaryRow& At(int t, int client) const;
  int n_clients = 0;
  int n_steps = 0;
};

// Aggregates errors x̂ - x per (client, t). Because the variance is taken over
// the same error sample, mse == variance + bias^2 up to rounding.
McSummary Aggregate(std::span<const EstimateGrid> replications,
                    const std::string& estimator,
                    CrlbAggregation crlb_mode = CrlbAggregation::kMean);

}  // namespace credinet

#endif  // CREDINET_METRICS_H_
