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

#ifndef CREDINET_RANDOM_H_
#define CREDINET_RANDOM_H_

#include <array>
#include <cstdint>
#include <initializer_list>

namespace credinet {

// xoshiro256** seeded through SplitMix64. Every draw in the library goes
// through this type so that sequences are identical across standard library
// implementations (std::normal_distribution is not portable).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  // Child stream for a key path, e.g. {replication, purpose, client, t}.
  // Distinct paths give statistically independent streams, and a path's
  // stream does not depend on which other paths exist.
  static RandomStream Derive(uint64_t master_seed,
                             std::initializer_list<uint64_t> path);

  uint64_t NextU64();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi);

  // Standard normal via Box-Muller; the second variate is cached.
  double Gaussian();
  double Gaussian(double mean, double variance);

  bool Bernoulli(double p);

 private:
  std::array<uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Purposes keep sub-streams for different noise sources disjoint.
enum class StreamPurpose : uint64_t {
  kPopulation = 1,
  kInitialBelief = 2,
  kProcessNoise = 3,
  kObservation = 4,
  kNetworkRow = 5,
};

// Hands out per-client, per-step streams for one replication.
class StreamFactory {
 public:
  StreamFactory(uint64_t master_seed, uint64_t replication)
      : master_seed_(master_seed), replication_(replication) {}

  RandomStream For(StreamPurpose purpose, uint64_t client,
                   uint64_t step) const {
    return RandomStream::Derive(
        master_seed_,
        {replication_, static_cast<uint64_t>(purpose), client, step});
  }

  uint64_t master_seed() const { return master_seed_; }
  uint64_t replication() const { return replication_; }

 private:
  uint64_t master_seed_;
  uint64_t replication_;
};

}  // namespace credinet

#endif  // CREDINET_RANDOM_H_
