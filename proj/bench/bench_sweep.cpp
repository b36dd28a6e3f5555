// Copyright 2026 The swapcert Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "swapcert/suites.hpp"
#include "swapcert/sweep.hpp"

namespace {

using swapcert::Exec;

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_BoundCurve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(swapcert::bound_curve(2.6, 2.0 * std::sqrt(2.0), 200, exec_of(state)));
  }
  label(state);
}

void BM_Lemma2Sweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(swapcert::lemma2_sweep(20240611, 1000, swapcert::t_of, exec_of(state)));
  }
  label(state);
}

void BM_WernerSweep(benchmark::State& state) {
  std::vector<double> vs;
  for (int k = 0; k <= 50; ++k) vs.push_back(0.95 + 0.001 * k);
  for (auto _ : state) benchmark::DoNotOptimize(swapcert::werner_sweep(vs, exec_of(state)));
  label(state);
}

void BM_TensorSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(swapcert::tensor_suite(20240611, 100, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_BoundCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Lemma2Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WernerSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TensorSuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
