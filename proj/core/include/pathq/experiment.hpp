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

// Configuration-driven population experiments: for each scheduled time step,
// build both probe circuits, draw `runs` independent shot-limited estimates
// of p0 and compare against the exact path sum.

#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathq/algorithms.hpp"
#include "pathq/pathsum.hpp"

namespace pathq {

enum class RunAlgorithm { one, two, pathsum_only };

std::string_view to_string(RunAlgorithm algorithm) noexcept;
RunAlgorithm parse_run_algorithm(std::string_view text);

struct ScheduleEntry {
    int step = 1;
    std::uint64_t shots = 1000;
    int runs = 1;
};

/// Flat `key = value` text, `#` starts a comment. Recognized keys:
///   preset, omega, xi, omega_c, beta, dt, n_levels, initial, n_steps, memory,
///   algorithm (I | II | pathsum), shots, runs, seed, schedule, max_qubits,
///   output, coeffs_output, std_compare_output.
/// `schedule` is a comma-separated list of step:shots:runs triples; without
/// it, steps 1..n_steps all use `shots` and `runs`. memory = 0 means the full
/// window (L = N) at every step.
struct RunConfig {
    SpinBosonModel model{.omega_rabi = 1.0, .dvr_values = {1.0, -1.0}, .bath = {}, .dt = 0.25};
    RunAlgorithm algorithm = RunAlgorithm::one;
    std::vector<ScheduleEntry> schedule{{1, 1000, 1}};
    int memory = 0;
    int initial = 0;
    std::uint64_t seed = 0;
    int max_qubits = 26;
    std::string output;
    std::string coeffs_output;
    std::string std_compare_output;

    /// Throws Error(invalid_config) on non-increasing steps, zero counts or a
    /// bad model.
    void validate() const;
    int memory_at(int step) const noexcept { return memory <= 0 ? step : std::min(memory, step); }
};

/// "fig8" (xi 0.1, omega_c 7.5, beta 5) or "fig9" (xi 1.2, omega_c 2.5,
/// beta 0.2), Omega = 1, dt = 0.25, 100 runs per step and the per-step shot
/// counts 1..5 of the published schedule.
RunConfig preset(std::string_view name);

/// Applies one key; throws Error(invalid_config) on unknown keys or bad values.
void apply_setting(RunConfig &config, std::string_view key, std::string_view value);
RunConfig parse_config(std::istream &in, RunConfig base = {});
std::vector<ScheduleEntry> parse_schedule(std::string_view text);

struct TrajectoryPoint {
    int step = 0;
    double t = 0.0;
    std::uint64_t shots = 0;
    int runs = 0;
    double p0_mean = 0.0;
    double p0_std = 0.0;
    double p1_mean = 0.0;
    double p1_std = 0.0;
    double p0_exact = 0.0;    // path-sum oracle
    double p0_circuit = 0.0;  // exact-amplitude circuit estimate
};

using PopulationTrajectory = std::vector<TrajectoryPoint>;

/// Per-run p0 estimates for given success probabilities of the probe-0 and
/// probe-1 circuits.
std::vector<double> sampled_estimates(double success0, double success1, std::uint64_t shots, int runs,
                                      std::uint64_t seed, int step);

/// Sample mean and (n - 1)-normalized standard deviation.
std::pair<double, double> mean_and_std(const std::vector<double> &values);

PopulationTrajectory run_experiment(const RunConfig &config);

void write_population_csv(std::ostream &out, const RunConfig &config, const PopulationTrajectory &trajectory);

struct StdComparisonRow {
    int step = 0;
    std::uint64_t shots = 0;
    int runs = 0;
    double std_one = 0.0;
    double std_two = 0.0;
};

/// Runs the schedule with both algorithms and pairs their p0 standard
/// deviations at matched shots.
std::vector<StdComparisonRow> compare_std(const RunConfig &config);
void write_std_comparison_csv(std::ostream &out, const RunConfig &config, const std::vector<StdComparisonRow> &rows);

/// Runs the experiment and writes every configured output file.
PopulationTrajectory run_and_export(const RunConfig &config);

}  // namespace pathq
