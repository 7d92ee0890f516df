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

#include <vector>

#include "benchmark/benchmark.h"
#include "credinet/filter.h"
#include "credinet/interaction.h"
#include "credinet/model.h"
#include "credinet/network.h"
#include "credinet/random.h"

namespace credinet {
namespace {

std::vector<double> Scores(int n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.Uniform(0.0, 15.0);
  return v;
}

void BM_Update(benchmark::State& state) {
  const auto nb = Scores(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Update({7.0, 0.4}, 7.3, nb, 1.0));
  }
}
BENCHMARK(BM_Update)->Arg(0)->Arg(10)->Arg(100);

void BM_Correct(benchmark::State& state) {
  const auto nb = Scores(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Correct({7.0, 0.4}, nb));
  }
}
BENCHMARK(BM_Correct)->Arg(10)->Arg(100);

void BM_SampleNetwork(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto truths = Scores(n, 3);
  const auto published = Scores(n, 4);
  int t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SampleNetwork(truths, published, 1.0, ++t, StreamFactory(5, 0)));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleNetwork)->Arg(50)->Arg(100)->Arg(400)->Complexity();

void BM_RunInteraction(benchmark::State& state) {
  ModelParams p;
  p.n_clients = static_cast<int>(state.range(0));
  p.horizon = 15;
  const StreamFactory streams(42, 0);
  const auto truths =
      InitPopulation(p, PopulationMode::kUniform, {}, streams);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunInteraction(p, truths, streams, {}));
  }
}
BENCHMARK(BM_RunInteraction)->Arg(50)->Arg(100);

}  // namespace
}  // namespace credinet

BENCHMARK_MAIN();
