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

#include "pathq/bath.hpp"
#include "pathq/pathsum.hpp"

namespace {

const pathq::OhmicBath kBath{.xi = 1.2, .omega_c = 2.5, .beta = 0.2};

void BM_InfluenceCoefficients(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pathq::influence_coefficients(kBath, 0.25, n, n));
}
BENCHMARK(BM_InfluenceCoefficients)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_RdmPathsum(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    pathq::SpinBosonModel m;
    m.bath = kBath;
    const auto table = pathq::influence_coefficients(kBath, m.dt, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(pathq::rdm_pathsum(m, table, n, 0));
}
BENCHMARK(BM_RdmPathsum)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
