// Copyright 2026 The homcascade Authors
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

#include "homcascade/oracle.hpp"
#include "homcascade/trajectory.hpp"

namespace {

using namespace homcascade;

void BM_PropagatorStep(benchmark::State& state) {
  const SystemParams p = SystemParams::symmetric(0.25);
  const auto method = state.range(0) == 0 ? PropagationMethod::kMatrixExponential : PropagationMethod::kRungeKutta4;
  const Propagator prop(non_hermitian_hamiltonian(p, 2), {0.1, method});
  Vector amps = initial_state().amplitudes;
  for (auto _ : state) {
    prop.step(amps);
    if (amps.squaredNorm() < 1e-8) amps = initial_state().amplitudes;
    benchmark::DoNotOptimize(amps.data());
  }
}
BENCHMARK(BM_PropagatorStep)->Arg(0)->Arg(1);

void BM_Trajectory(benchmark::State& state) {
  const SystemParams p = SystemParams::symmetric(static_cast<double>(state.range(0)) / 100.0);
  EnsembleConfig cfg;
  cfg.sampling = state.range(1) == 0 ? JumpSampling::kFirstOrder : JumpSampling::kNormThreshold;
  const TrajectorySampler sampler(p, cfg);
  std::uint64_t index = 0;
  for (auto _ : state) {
    RandomStream rng = RandomStream::substream(cfg.seed, index++);
    benchmark::DoNotOptimize(sampler.run(rng));
  }
}
BENCHMARK(BM_Trajectory)->Args({25, 0})->Args({25, 1})->Args({500, 0})->Args({500, 1})->Unit(benchmark::kMicrosecond);

void BM_PairProbabilities(benchmark::State& state) {
  const SystemParams p = SystemParams::symmetric(static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(pair_probabilities(p));
}
BENCHMARK(BM_PairProbabilities)->Arg(25)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_PairProbabilitiesClosedForm(benchmark::State& state) {
  const SystemParams p = SystemParams::symmetric(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(pair_probabilities_exact(p));
}
BENCHMARK(BM_PairProbabilitiesClosedForm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
