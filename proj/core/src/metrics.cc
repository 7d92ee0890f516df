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

#include "credinet/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "credinet/error.h"

namespace credinet {

double FisherInformation(int n) {
  if (n < 0) throw ValidationError("degree", "must be >= 0");
  return static_cast<double>(n);
}

double Crlb(int n) {
  if (n < 0) throw ValidationError("degree", "must be >= 0");
  return n == 0 ? std::numeric_limits<double>::infinity() : 1.0 / n;
}

double Quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ValidationError("values", "empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats ComputeBoxStats(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BoxStats box;
  box.median = Quantile(sorted, 0.5);
  box.q25 = Quantile(sorted, 0.25);
  box.q75 = Quantile(sorted, 0.75);
  const double iqr = box.q75 - box.q25;
  const double lo = box.q25 - 1.5 * iqr;
  const double hi = box.q75 + 1.5 * iqr;
  for (double v : sorted) {
    if (v < lo || v > hi) box.outliers.push_back(v);
  }
  return box;
}

const SummaryRow& McSummary::At(int t, int client) const {
  return rows.at(static_cast<std::size_t>(t) * n_clients + client);
}

McSummary Aggregate(std::span<const EstimateGrid> replications,
                    const std::string& estimator, CrlbAggregation crlb_mode) {
  if (replications.empty()) {
    throw ValidationError("replications", "need at least one replication");
  }
  const std::size_t steps = replications.front().size();
  const std::size_t clients = steps ? replications.front().front().size() : 0;
  for (const auto& grid : replications) {
    if (grid.size() != steps) {
      throw ValidationError("replications", "horizon mismatch across replications");
    }
    for (const auto& row : grid) {
      if (row.size() != clients) {
        throw ValidationError("replications", "client count mismatch");
      }
    }
  }

  const double reps = static_cast<double>(replications.size());
  const double inf = std::numeric_limits<double>::infinity();
  McSummary summary;
  summary.estimator = estimator;
  summary.n_clients = static_cast<int>(clients);
  summary.n_steps = static_cast<int>(steps);
  summary.rows.reserve(steps * clients);

  std::vector<double> errors(replications.size());
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t c = 0; c < clients; ++c) {
      double truth_sum = 0.0;
      double err_sum = 0.0;
      double inv_degree_sum = 0.0;
      double degree_sum = 0.0;
      for (std::size_t r = 0; r < replications.size(); ++r) {
        const EstimateSample& s = replications[r][t][c];
        errors[r] = s.estimate - s.truth;
        truth_sum += s.truth;
        err_sum += errors[r];
        inv_degree_sum += s.degree > 0 ? 1.0 / s.degree : inf;
        degree_sum += s.degree;
      }
      SummaryRow row;
      row.client = static_cast<int>(c);
      row.t = static_cast<int>(t);
      row.x_true = truth_sum / reps;
      row.bias = err_sum / reps;
      double centered = 0.0;
      double squared = 0.0;
      for (double e : errors) {
        centered += (e - row.bias) * (e - row.bias);
        squared += e * e;
      }
      row.variance = centered / reps;
      row.mse = squared / reps;
      row.crlb = crlb_mode == CrlbAggregation::kMean
                     ? inv_degree_sum / reps
                     : (degree_sum > 0.0 ? reps / degree_sum : inf);
      row.box = ComputeBoxStats(errors);
      summary.rows.push_back(std::move(row));
    }
  }
  return summary;
}

}  // namespace credinet
