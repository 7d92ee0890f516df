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

#ifndef CREDINET_NETWORK_H_
#define CREDINET_NETWORK_H_

#include <cstddef>
#include <span>
#include <vector>

#include "credinet/random.h"

namespace credinet {

// Directed adjacency for one period. Row i lists whom client i connected
// to; rows are formed from i's own true score, so the matrix is generally
// asymmetric. The diagonal is always zero.
class NetworkSnapshot {
 public:
  NetworkSnapshot(int n_clients, int time_index);

  int n_clients() const { return n_clients_; }
  int time_index() const { return time_index_; }

  bool edge(int i, int j) const {
    return adjacency_[static_cast<std::size_t>(i) * n_clients_ + j] != 0;
  }
  // Setting a diagonal entry is rejected.
  void set_edge(int i, int j, bool value);

  // Neighbor set of client i in increasing index order.
  std::vector<int> Neighbors(int i) const;
  int Degree(int i) const;

 private:
  int n_clients_;
  int time_index_;
  std::vector<unsigned char> adjacency_;
};

// nu * exp(-(x_i - s_j)^2 / 2): probability that i meets j and the
// Rayleigh(1) match threshold exceeds their score gap.
double ConnectionProbability(double x_i, double s_j, double nu);

// Independent Bernoulli draw for every ordered pair i != j, comparing the
// true score of i with the published score of j. Row i uses the
// kNetworkRow stream for (i, t) and consumes one uniform per column.
NetworkSnapshot SampleNetwork(std::span<const double> truths,
                              std::span<const double> published, double nu,
                              int t, const StreamFactory& streams);

}  // namespace credinet

#endif  // CREDINET_NETWORK_H_
