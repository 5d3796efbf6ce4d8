// Copyright 2026 The stirap Authors
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

#include "stirap/dynamics.hpp"
#include "stirap/scenario.hpp"
#include "stirap/tomography.hpp"

namespace {

using namespace stirap;

void BM_Hamiltonian(benchmark::State& state) {
  const auto s = preset("paper-fig2").setup();
  double t = -300e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hamiltonian(t, s.qutrit, s.drive));
    t += 1e-12;
  }
}
BENCHMARK(BM_Hamiltonian);

void BM_EvolveReferenceRun(benchmark::State& state) {
  const auto s = preset("paper-fig2").setup();
  for (auto _ : state) benchmark::DoNotOptimize(evolve(s.initial, s.qutrit, s.drive, s.integrator));
}
BENCHMARK(BM_EvolveReferenceRun)->Unit(benchmark::kMillisecond);

void BM_PhaseAverage(benchmark::State& state) {
  auto s = preset("paper-fig2").setup();
  s.integrator.phi_samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_average(s.initial, s.qutrit, s.drive, s.integrator, 1));
  }
}
BENCHMARK(BM_PhaseAverage)->Arg(6)->Arg(36)->Unit(benchmark::kMillisecond);

void BM_OracleStep(benchmark::State& state) {
  const auto s = preset("paper-fig2").setup();
  auto d = s.drive;
  d.t_start = -1e-9;
  d.t_end = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_evolve(s.initial, s.qutrit, d, 100));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_OracleStep)->Unit(benchmark::kMicrosecond);

void BM_TomographyInvert(benchmark::State& state) {
  const auto c = TomographyCalibration::demo();
  double pa = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert(pa, 0.2, c));
    pa = pa < 0.8 ? pa + 1e-9 : 0.3;
  }
}
BENCHMARK(BM_TomographyInvert);

}  // namespace

BENCHMARK_MAIN();
