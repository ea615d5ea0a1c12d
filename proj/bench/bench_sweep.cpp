// SPDX-License-Identifier: Apache-2.0
//
// wptdas: link-level simulator for wireless power transfer with distributed antennas
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "wptdas/experiments.hpp"

#include <benchmark/benchmark.h>

namespace
{

wptdas::ExperimentConfig bench_config(std::size_t realizations)
{
    wptdas::ExperimentConfig cfg;
    cfg.realizations = realizations;
    return cfg;
}

void BM_SweepSerial(benchmark::State& state)
{
    auto const cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(wptdas::run_sweep_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state)
{
    auto const cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    int const jobs = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(wptdas::run_sweep(cfg, jobs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_SweepSerial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Args({100, 1})->Args({100, 2})->Args({100, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
