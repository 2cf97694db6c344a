// Copyright 2026 The overcrowd Authors
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

#include <benchmark/benchmark.h>

#include "overcrowd/gamma.hpp"
#include "overcrowd/kernels.hpp"
#include "overcrowd/mixture.hpp"
#include "overcrowd/partitions.hpp"
#include "overcrowd/sampler.hpp"

namespace {

using namespace overcrowd;

void BM_LogQ(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  double z = 0.9 * a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma::log_Q(a, z));
    z += 1e-9;
  }
}
BENCHMARK(BM_LogQ)->Arg(10)->Arg(1000)->Arg(100000);

void BM_PartitionTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(partitions::PartitionTable(state.range(0)));
}
BENCHMARK(BM_PartitionTable)->Arg(1000)->Arg(5000);

void BM_CountDistribution(benchmark::State& state) {
  const EnsembleParams p(static_cast<int>(state.range(0)), 0.5, 0.9);
  const auto w = mixture::bernoulli_weights(p);
  for (auto _ : state) benchmark::DoNotOptimize(mixture::poisson_binomial(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountDistribution)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_ConditionalSample(benchmark::State& state) {
  const EnsembleParams p(static_cast<int>(state.range(0)), 0.5, 0.9);
  const mixture::ConditionalSampler s(mixture::bernoulli_weights(p));
  RandomStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(p.n_outside(), rng));
}
BENCHMARK(BM_ConditionalSample)->Arg(100)->Arg(1000);

void BM_EdgeKernel(benchmark::State& state) {
  const EnsembleParams p(static_cast<int>(state.range(0)), 0.5, 0.9);
  const Kernel k({KernelKind::edge_zoomed, p, {}});
  const Complex z(0.7, 0.3), w(1.1, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(k(z, w));
}
BENCHMARK(BM_EdgeKernel)->Arg(200)->Arg(800);

void BM_LimitKernel(benchmark::State& state) {
  const Complex z(0.7, 0.3), w(1.1, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(eval_limit(z, w));
}
BENCHMARK(BM_LimitKernel);

void BM_Tabulate(benchmark::State& state) {
  const EnsembleParams p(400, 0.5, 0.9);
  const Kernel k({KernelKind::edge_zoomed, p, {}});
  const auto pts = lattice(0.2, 3.0, 15, -2.0, 2.0, 15);
  for (auto _ : state) benchmark::DoNotOptimize(tabulate_diagonal(k, pts, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Tabulate)->Arg(1)->Arg(0);

void BM_SampleEnsemble(benchmark::State& state) {
  const EnsembleParams p(static_cast<int>(state.range(0)), 0.5, 0.9);
  const EnsembleSampler s(p);
  RandomStream rng(2, 0);
  const auto kind = state.range(1) ? SamplerKind::sequential : SamplerKind::radial;
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(rng, kind));
}
BENCHMARK(BM_SampleEnsemble)->Args({30, 0})->Args({30, 1})->Args({100, 1});

}  // namespace

BENCHMARK_MAIN();
