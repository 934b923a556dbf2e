// Copyright 2026 The tnsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tnsprep/exact_oracle.hpp"
#include "tnsprep/gap_certifier.hpp"
#include "tnsprep/sampling.hpp"

namespace {

using namespace tnsprep;

void BM_BuildState(benchmark::State& state) {
  ModelSpec m = fixtures::xchain(static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_state(m).amplitudes.data());
}
BENCHMARK(BM_BuildState)->Arg(4)->Arg(8)->Arg(12);

void BM_ParentHamiltonian(benchmark::State& state) {
  ModelSpec m = fixtures::xchain(static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_parent_hamiltonian(m).terms.size());
}
BENCHMARK(BM_ParentHamiltonian)->Arg(4)->Arg(8);

void BM_CertifyPoint(benchmark::State& state) {
  static const char* kModes[] = {"overlapping-only", "all-pairs", "blocked:1"};
  ModelSpec m = fixtures::chain4(0.2);
  CertifierMode mode = CertifierMode::parse(kModes[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(certify_point(m, mode).delta);
  state.SetLabel(mode.name());
}
BENCHMARK(BM_CertifyPoint)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  ParentHamiltonian ph = build_parent_hamiltonian(fixtures::xchain(static_cast<int>(state.range(0)), 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(ph, 2).gap);
}
BENCHMARK(BM_Spectrum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  StateVector psi = build_state(fixtures::chain4(0.2));
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample(psi, {}, {}, 100000, 7, workers).bits.data());
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_Sample)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
