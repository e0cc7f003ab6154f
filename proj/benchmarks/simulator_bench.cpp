// Copyright 2026 The pathq Authors
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

#include "pathq/algorithms.hpp"
#include "pathq/circuit.hpp"

namespace {

void BM_HadamardLayer(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    pathq::Circuit c(n);
    for (int q = 0; q < n; ++q) c.add(pathq::Gate::h(q));
    for (auto _ : state) benchmark::DoNotOptimize(pathq::simulate(c));
    state.SetItemsProcessed(state.iterations() * n * (std::int64_t{1} << n));
}
BENCHMARK(BM_HadamardLayer)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_ExactSuccess(benchmark::State &state) {
    pathq::ExperimentPlan plan;
    plan.model.bath = {.xi = 0.1, .omega_c = 7.5, .beta = 5.0};
    plan.n_steps = static_cast<int>(state.range(0));
    plan.memory = plan.n_steps;
    plan.algorithm = state.range(1) ? pathq::Algorithm::two : pathq::Algorithm::one;
    const auto circuits = plan.algorithm == pathq::Algorithm::one ? pathq::build_algorithm_I(plan)
                                                                  : pathq::build_algorithm_II(plan);
    for (auto _ : state) benchmark::DoNotOptimize(pathq::exact_success_probability(circuits[0]));
}
BENCHMARK(BM_ExactSuccess)->Args({2, 0})->Args({3, 0})->Args({2, 1})->Args({3, 1})->Unit(benchmark::kMillisecond);

}  // namespace
