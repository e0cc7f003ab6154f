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

#include "pathq/experiment.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "pathq/error.hpp"
#include "pathq/format.hpp"

namespace pathq {

namespace {

constexpr std::uint64_t kShotsFig8[] = {20000, 30000, 40000, 250000, 5000000};
constexpr std::uint64_t kShotsFig9[] = {20000, 75000, 300000, 5000000, 5000000};
constexpr int kPresetRuns = 100;
constexpr int kPresetMemory = 3;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw Error(Errc::invalid_config, "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double to_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) bad_value(key, text);
    return v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, text);
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<double> even_dvr(int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = 1.0 - 2.0 * i / (n - 1);
    return s;
}

int level_bits(int n_levels) { return static_cast<int>(std::bit_width(static_cast<unsigned>(n_levels - 1))); }

Algorithm circuit_algorithm(RunAlgorithm a) { return a == RunAlgorithm::two ? Algorithm::two : Algorithm::one; }

// Per-run population estimates for every level, given exact success
// probabilities of the probe circuits.
std::vector<std::vector<double>> sampled_populations(std::span<const double> success, std::uint64_t shots, int runs,
                                                     std::uint64_t seed, int step) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(runs));
    std::vector<double> counts(success.size());
    for (int r = 0; r < runs; ++r) {
        for (std::size_t probe = 0; probe < success.size(); ++probe) {
            auto rng = derived_rng(seed, step, r, static_cast<int>(probe));
            counts[probe] = static_cast<double>(sample_success(success[probe], shots, rng));
        }
        out.push_back(estimate_populations(counts));
    }
    return out;
}

void check_caps(const RunConfig &config) {
    const int n = config.model.n_levels();
    const PathSumOptions budget;
    for (const auto &e : config.schedule) {
        if (e.step * level_bits(n) > budget.max_path_bits)
            throw Error(Errc::budget_exceeded, "step " + std::to_string(e.step) + " exceeds the path-sum budget of " +
                                                   std::to_string(budget.max_path_bits) + " path bits");
        if (config.algorithm == RunAlgorithm::pathsum_only) continue;
        const auto r = resource_counts(n, e.step, config.memory_at(e.step), Algorithm::one);
        if (r.qubits > config.max_qubits)
            throw Error(Errc::cap_exceeded, "step " + std::to_string(e.step) + " needs " + std::to_string(r.qubits) +
                                                " simulated qubits, above the cap of " +
                                                std::to_string(config.max_qubits));
    }
}

void write_header(std::ostream &out, std::string_view title, const RunConfig &config) {
    const auto &m = config.model;
    out << "# pathq " << title << '\n';
    out << "# omega=" << format_double(m.omega_rabi) << " xi=" << format_double(m.bath.xi)
        << " omega_c=" << format_double(m.bath.omega_c) << " beta=" << format_double(m.bath.beta)
        << " dt=" << format_double(m.dt) << " n_levels=" << m.n_levels() << '\n';
    out << "# algorithm=" << to_string(config.algorithm) << " memory=" << config.memory << " initial=" << config.initial
        << " seed=" << config.seed << '\n';
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

std::string_view to_string(RunAlgorithm algorithm) noexcept {
    switch (algorithm) {
        case RunAlgorithm::one: return "I";
        case RunAlgorithm::two: return "II";
        case RunAlgorithm::pathsum_only: return "pathsum";
    }
    return "?";
}

RunAlgorithm parse_run_algorithm(std::string_view text) {
    text = trim(text);
    if (text == "I" || text == "1" || text == "one") return RunAlgorithm::one;
    if (text == "II" || text == "2" || text == "two") return RunAlgorithm::two;
    if (text == "pathsum" || text == "pathsum-only") return RunAlgorithm::pathsum_only;
    bad_value("algorithm", text);
}

void RunConfig::validate() const {
    try {
        model.validate();
    } catch (const Error &e) {
        throw Error(Errc::invalid_config, e.what());
    }
    const int n = model.n_levels();
    if (algorithm != RunAlgorithm::pathsum_only && !std::has_single_bit(static_cast<unsigned>(n)))
        throw Error(Errc::invalid_config, "circuit algorithms need a power-of-two level count");
    if (schedule.empty()) throw Error(Errc::invalid_config, "schedule is empty");
    int previous = 0;
    for (const auto &e : schedule) {
        if (e.step <= previous) throw Error(Errc::invalid_config, "schedule steps must be strictly increasing from 1");
        if (e.shots < 1 || e.runs < 1) throw Error(Errc::invalid_config, "shots and runs must be positive");
        previous = e.step;
    }
    if (memory < 0) throw Error(Errc::invalid_config, "memory must be >= 0 (0 keeps the full window)");
    if (initial < 0 || initial >= n) throw Error(Errc::invalid_config, "initial must be a level index");
    if (max_qubits < 1) throw Error(Errc::invalid_config, "max_qubits must be positive");
}

RunConfig preset(std::string_view name) {
    RunConfig c;
    std::span<const std::uint64_t> shots;
    if (name == "fig8") {
        c.model.bath = {.xi = 0.1, .omega_c = 7.5, .beta = 5.0};
        shots = kShotsFig8;
    } else if (name == "fig9") {
        c.model.bath = {.xi = 1.2, .omega_c = 2.5, .beta = 0.2};
        shots = kShotsFig9;
    } else {
        throw Error(Errc::invalid_config, "unknown preset '" + std::string(name) + "' (expected fig8 or fig9)");
    }
    c.model.omega_rabi = 1.0;
    c.model.dt = 0.25;
    c.memory = kPresetMemory;
    c.schedule.clear();
    for (std::size_t i = 0; i < shots.size(); ++i)
        c.schedule.push_back({static_cast<int>(i) + 1, shots[i], kPresetRuns});
    return c;
}

std::vector<ScheduleEntry> parse_schedule(std::string_view text) {
    std::vector<ScheduleEntry> out;
    for (auto item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) bad_value("schedule", item);
        out.push_back({to_integer<int>("schedule", parts[0]), to_integer<std::uint64_t>("schedule", parts[1]),
                       to_integer<int>("schedule", parts[2])});
    }
    return out;
}

void apply_setting(RunConfig &config, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    auto &m = config.model;
    if (key == "preset") {
        config = preset(value);
    } else if (key == "omega") {
        m.omega_rabi = to_double(key, value);
    } else if (key == "xi") {
        m.bath.xi = to_double(key, value);
    } else if (key == "omega_c") {
        m.bath.omega_c = to_double(key, value);
    } else if (key == "beta") {
        m.bath.beta = to_double(key, value);
    } else if (key == "dt") {
        m.dt = to_double(key, value);
    } else if (key == "n_levels") {
        const int n = to_integer<int>(key, value);
        if (n < 2) bad_value(key, value);
        m.dvr_values = even_dvr(n);
    } else if (key == "dvr_values") {
        m.dvr_values.clear();
        for (auto v : split(value, ',')) m.dvr_values.push_back(to_double(key, v));
    } else if (key == "initial") {
        config.initial = to_integer<int>(key, value);
    } else if (key == "n_steps") {
        const int n = to_integer<int>(key, value);
        if (n < 1) bad_value(key, value);
        const auto base = config.schedule.empty() ? ScheduleEntry{} : config.schedule.front();
        config.schedule.clear();
        for (int k = 1; k <= n; ++k) config.schedule.push_back({k, base.shots, base.runs});
    } else if (key == "schedule") {
        config.schedule = parse_schedule(value);
    } else if (key == "shots") {
        const auto shots = to_integer<std::uint64_t>(key, value);
        for (auto &e : config.schedule) e.shots = shots;
    } else if (key == "runs") {
        const auto runs = to_integer<int>(key, value);
        for (auto &e : config.schedule) e.runs = runs;
    } else if (key == "memory") {
        config.memory = to_integer<int>(key, value);
    } else if (key == "algorithm") {
        config.algorithm = parse_run_algorithm(value);
    } else if (key == "seed") {
        config.seed = to_integer<std::uint64_t>(key, value);
    } else if (key == "max_qubits") {
        config.max_qubits = to_integer<int>(key, value);
    } else if (key == "output") {
        config.output = std::string(value);
    } else if (key == "coeffs_output") {
        config.coeffs_output = std::string(value);
    } else if (key == "std_compare_output") {
        config.std_compare_output = std::string(value);
    } else {
        throw Error(Errc::invalid_config, "unknown key '" + std::string(key) + "'");
    }
}

RunConfig parse_config(std::istream &in, RunConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw Error(Errc::invalid_config, "line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    }
    return base;
}

std::vector<double> sampled_estimates(double success0, double success1, std::uint64_t shots, int runs,
                                      std::uint64_t seed, int step) {
    const double s[2] = {success0, success1};
    std::vector<double> out;
    for (const auto &p : sampled_populations(s, shots, runs, seed, step)) out.push_back(p[0]);
    return out;
}

std::pair<double, double> mean_and_std(const std::vector<double> &values) {
    if (values.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

PopulationTrajectory run_experiment(const RunConfig &config) {
    config.validate();
    check_caps(config);

    const int n = config.model.n_levels();
    PopulationTrajectory out;
    for (const auto &entry : config.schedule) {
        const int steps = entry.step;
        const int memory = config.memory_at(steps);
        const auto table = influence_coefficients(config.model.bath, config.model.dt, steps, memory);
        const auto rho = rdm_pathsum(config.model, table, steps, config.initial);

        TrajectoryPoint pt;
        pt.step = steps;
        pt.t = steps * config.model.dt;
        pt.p0_exact = rho.population(0);

        if (config.algorithm == RunAlgorithm::pathsum_only) {
            pt.p0_mean = pt.p0_exact;
            pt.p1_mean = n == 2 ? 1.0 - pt.p0_mean : rho.population(1);
            pt.p0_circuit = pt.p0_exact;
            out.push_back(pt);
            continue;
        }

        ExperimentPlan plan;
        plan.model = config.model;
        plan.n_steps = steps;
        plan.memory = memory;
        plan.algorithm = circuit_algorithm(config.algorithm);
        plan.initial = config.initial;
        plan.shots = entry.shots;
        plan.runs = entry.runs;
        plan.seed = config.seed;
        plan.simulator.max_qubits = config.max_qubits;
        std::vector<double> success;
        for (const auto &built : build_probe_circuits(plan, table))
            success.push_back(exact_success_probability(built, plan.simulator));
        pt.p0_circuit = estimate_populations(success)[0];

        const auto runs = sampled_populations(success, entry.shots, entry.runs, config.seed, steps);
        std::vector<double> p0(runs.size());
        std::vector<double> p1(runs.size());
        for (std::size_t r = 0; r < runs.size(); ++r) {
            p0[r] = runs[r][0];
            p1[r] = runs[r][1];
        }
        std::tie(pt.p0_mean, pt.p0_std) = mean_and_std(p0);
        if (n == 2) {
            pt.p1_mean = 1.0 - pt.p0_mean;
            pt.p1_std = pt.p0_std;
        } else {
            std::tie(pt.p1_mean, pt.p1_std) = mean_and_std(p1);
        }
        pt.shots = entry.shots;
        pt.runs = entry.runs;
        out.push_back(pt);
    }
    return out;
}

void write_population_csv(std::ostream &out, const RunConfig &config, const PopulationTrajectory &trajectory) {
    write_header(out, "population trajectory", config);
    out << "step,t,shots,runs,p0_mean,p0_std,p1_mean,p1_std,p0_exact,p0_circuit\n";
    for (const auto &p : trajectory) {
        out << p.step << ',' << format_double(p.t) << ',' << p.shots << ',' << p.runs << ','
            << format_double(p.p0_mean) << ',' << format_double(p.p0_std) << ',' << format_double(p.p1_mean) << ','
            << format_double(p.p1_std) << ',' << format_double(p.p0_exact) << ',' << format_double(p.p0_circuit)
            << '\n';
    }
}

std::vector<StdComparisonRow> compare_std(const RunConfig &config) {
    auto one = config;
    one.algorithm = RunAlgorithm::one;
    auto two = config;
    two.algorithm = RunAlgorithm::two;
    const auto a = run_experiment(one);
    const auto b = run_experiment(two);
    std::vector<StdComparisonRow> rows;
    for (std::size_t i = 0; i < a.size(); ++i)
        rows.push_back({a[i].step, a[i].shots, a[i].runs, a[i].p0_std, b[i].p0_std});
    return rows;
}

void write_std_comparison_csv(std::ostream &out, const RunConfig &config, const std::vector<StdComparisonRow> &rows) {
    write_header(out, "algorithm I vs II standard deviation", config);
    out << "step,t,shots,runs,p0_std_I,p0_std_II\n";
    for (const auto &r : rows) {
        out << r.step << ',' << format_double(r.step * config.model.dt) << ',' << r.shots << ',' << r.runs << ','
            << format_double(r.std_one) << ',' << format_double(r.std_two) << '\n';
    }
}

PopulationTrajectory run_and_export(const RunConfig &config) {
    auto trajectory = run_experiment(config);
    if (!config.output.empty()) {
        auto out = open_output(config.output);
        write_population_csv(out, config, trajectory);
    }
    if (!config.coeffs_output.empty()) {
        const int steps = config.schedule.back().step;
        const auto table =
            influence_coefficients(config.model.bath, config.model.dt, steps, config.memory_at(steps));
        auto out = open_output(config.coeffs_output);
        write_coefficients_csv(out, table);
    }
    if (!config.std_compare_output.empty()) {
        auto out = open_output(config.std_compare_output);
        write_std_comparison_csv(out, config, compare_std(config));
    }
    return trajectory;
}

}  // namespace pathq
