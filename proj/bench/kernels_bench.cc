// Copyright 2026 The cvcz Authors
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

#include "cvcz/analysis.h"
#include "cvcz/kernels.h"
#include "cvcz/simulation.h"

using namespace cvcz;

namespace {

Eigen::MatrixXd start_cov(size_t slices) {
    SimConfig cfg;
    cfg.slices = slices;
    cfg.gate.kappa0 = 5;
    cfg.gate.s_light = 0.5;
    return initial_state(cfg).cov();
}

template <void (*Apply)(Eigen::MatrixXd &, const LocalChannel &)>
void BM_local_channel(benchmark::State &state) {
    size_t K = static_cast<size_t>(state.range(0));
    SimConfig cfg;
    cfg.slices = K;
    cfg.gate.r = 0.01;
    cfg.gate.eta = 0.01;
    EventSchedule schedule(cfg);
    Eigen::MatrixXd cov = start_cov(K);
    size_t i = 2 * K;
    for (auto _ : state) {
        Apply(cov, schedule.at(i));
        i = 2 * K + (i + 1) % (2 * K);
        benchmark::DoNotOptimize(cov.data());
    }
}

void BM_sweep(benchmark::State &state, bool parallel) {
    SweepSpec spec;
    spec.kappa0_min = 1;
    spec.kappa0_max = 30;
    spec.count = 32;
    spec.branch = Branch::noisy_simulated;
    spec.slices = 256;
    spec.gate.r = 0.01;
    spec.gate.eta = 0.01;
    spec.gate.s_light = db_to_s(5);
    for (auto _ : state) {
        auto rows = parallel ? sweep(spec) : sweep_serial(spec);
        benchmark::DoNotOptimize(rows.data());
    }
}

void BM_collective_engine(benchmark::State &state) {
    SimConfig cfg;
    cfg.slices = static_cast<size_t>(state.range(0));
    cfg.gate.kappa0 = 8;
    cfg.gate.r = 0.05;
    cfg.gate.eta = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_collective(cfg).fidelity);
    }
}

}  // namespace

BENCHMARK(BM_local_channel<apply_local_serial>)->Name("apply_local_serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_local_channel<apply_local_parallel>)->Name("apply_local_parallel")->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_sweep, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sweep, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_collective_engine)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
