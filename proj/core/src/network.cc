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

#include "credinet/network.h"

#include <cmath>
#include <string>

#include "credinet/error.h"

namespace credinet {

NetworkSnapshot::NetworkSnapshot(int n_clients, int time_index)
    : n_clients_(n_clients), time_index_(time_index) {
  if (n_clients < 1) throw ValidationError("n_clients", "must be >= 1");
  adjacency_.assign(static_cast<std::size_t>(n_clients) * n_clients, 0);
}

void NetworkSnapshot::set_edge(int i, int j, bool value) {
  if (i < 0 || j < 0 || i >= n_clients_ || j >= n_clients_) {
    throw std::out_of_range("edge index out of range");
  }
  if (i == j && value) throw ValidationError("edge", "self-loops are not allowed");
  adjacency_[static_cast<std::size_t>(i) * n_clients_ + j] = value ? 1 : 0;
}

std::vector<int> NetworkSnapshot::Neighbors(int i) const {
  if (i < 0 || i >= n_clients_) {
    throw std::out_of_range("client index " + std::to_string(i) +
                            " out of range");
  }
  std::vector<int> out;
  const auto row = static_cast<std::size_t>(i) * n_clients_;
  for (int j = 0; j < n_clients_; ++j) {
    if (adjacency_[row + j]) out.push_back(j);
  }
  return out;
}

int NetworkSnapshot::Degree(int i) const {
  if (i < 0 || i >= n_clients_) {
    throw std::out_of_range("client index " + std::to_string(i) +
                            " out of range");
  }
  int degree = 0;
  const auto row = static_cast<std::size_t>(i) * n_clients_;
  for (int j = 0; j < n_clients_; ++j) degree += adjacency_[row + j];
  return degree;
}

double ConnectionProbability(double x_i, double s_j, double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw ValidationError("nu", "value " + std::to_string(nu) +
                                    " outside valid range (0, 1]");
  }
  const double gap = x_i - s_j;
  return nu * std::exp(-0.5 * gap * gap);
}

NetworkSnapshot SampleNetwork(std::span<const double> truths,
                              std::span<const double> published, double nu,
                              int t, const StreamFactory& streams) {
  if (truths.size() != published.size()) {
    throw ValidationError("published", "length " +
                                           std::to_string(published.size()) +
                                           " does not match " +
                                           std::to_string(truths.size()) +
                                           " truths");
  }
  const int n = static_cast<int>(truths.size());
  NetworkSnapshot snap(n, t);
  for (int i = 0; i < n; ++i) {
    RandomStream rng = streams.For(StreamPurpose::kNetworkRow,
                                   static_cast<uint64_t>(i),
                                   static_cast<uint64_t>(t));
    for (int j = 0; j < n; ++j) {
      const double u = rng.Uniform();
      if (j == i) continue;
      if (u < ConnectionProbability(truths[i], published[j], nu)) {
        snap.set_edge(i, j, true);
      }
    }
  }
  return snap;
}

}  // namespace credinet
