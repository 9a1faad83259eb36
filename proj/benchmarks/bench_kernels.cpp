// Copyright 2026 The dasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "dasim/errors.hpp"
#include "dasim/evolve.hpp"
#include "dasim/linalg.hpp"
#include "dasim/rllemma.hpp"

namespace {

using namespace dasim;

ComplexMatrix random_hermitian(Index n, bool real) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), real ? 0.0 : g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

std::shared_ptr<const AdiabaticPath> tfim(int n) { return std::make_shared<const AdiabaticPath>(tfim_path(n)); }

void BM_HermitianEigComplex(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(state.range(0), false);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEigComplex)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HermitianEigReal(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(state.range(0), true);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEigReal)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_UnitaryEig(benchmark::State& state) {
  const ComplexMatrix u = matrix_exp_hermitian(random_hermitian(state.range(0), false), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(unitary_eig(u));
}
BENCHMARK(BM_UnitaryEig)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_TrotterStep(benchmark::State& state) {
  const EvolutionSpec spec(tfim(static_cast<int>(state.range(0))), 100.0, 100);
  for (auto _ : state) benchmark::DoNotOptimize(trotter_step_unitary(spec, 0.37));
}
BENCHMARK(BM_TrotterStep)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TrotterEvolution(benchmark::State& state) {
  const EvolutionSpec spec(tfim(8), 100.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trotter_evolution(spec));
}
BENCHMARK(BM_TrotterEvolution)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ExactStateEvolution(benchmark::State& state) {
  const auto path = tfim(static_cast<int>(state.range(0)));
  const ComplexVector psi = ground_state(path->initial().matrix()).state;
  for (auto _ : state) benchmark::DoNotOptimize(exact_state_evolution(*path, 10.0, psi));
}
BENCHMARK(BM_ExactStateEvolution)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DiscreteSum(benchmark::State& state) {
  const OscillatorySumSpec spec{[](double s) { return cplx(1.0 + s * s, 0.0); },
                                [](double s) { return 1.0 + 0.2 * s; }, 500.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(discrete_sum_J(spec));
}
BENCHMARK(BM_DiscreteSum)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
