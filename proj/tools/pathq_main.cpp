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

// pathq command-line front end.
//
//   pathq coeffs    --preset fig8 --steps 3 -o alpha.csv
//   pathq pathsum   --preset fig9 --steps 6
//   pathq circuit   --steps 2 --algorithm II --format qasm
//   pathq simulate  --config run.cfg
//   pathq verify
//   pathq resources --levels 2 --steps 5 --memory 3

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathq/algorithms.hpp"
#include "pathq/error.hpp"
#include "pathq/experiment.hpp"
#include "pathq/verify.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset_name;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--config", o.config_path, "Key = value configuration file");
    cmd->add_option("--preset", o.preset_name, "Built-in parameter set (fig8, fig9)");
    cmd->add_option("--set", o.overrides, "Override one key, e.g. --set xi=0.5")->type_name("KEY=VALUE");
}

pathq::RunConfig load_config(const CommonOptions &o) {
    pathq::RunConfig config;
    if (!o.preset_name.empty()) config = pathq::preset(o.preset_name);
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw pathq::Error(pathq::Errc::io_error, "cannot read '" + o.config_path + "'");
        config = pathq::parse_config(in, config);
    }
    for (const auto &kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw pathq::Error(pathq::Errc::invalid_config, "--set expects KEY=VALUE, got '" + kv + "'");
        pathq::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    config.validate();
    return config;
}

// Writes through `body` to `path`, or to stdout when the path is empty.
template <typename Body>
void emit(const std::string &path, Body body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pathq::Error(pathq::Errc::io_error, "cannot open '" + path + "' for writing");
    body(out);
}

struct Window {
    int steps = 0;
    int memory = 0;
};

Window resolve_window(const pathq::RunConfig &config, std::optional<int> steps, std::optional<int> memory) {
    Window w;
    w.steps = steps.value_or(config.schedule.back().step);
    if (w.steps < 1) throw pathq::Error(pathq::Errc::invalid_argument, "--steps must be >= 1");
    w.memory = memory ? (*memory <= 0 ? w.steps : *memory) : config.memory_at(w.steps);
    if (w.memory > w.steps) throw pathq::Error(pathq::Errc::invalid_argument, "--memory must not exceed --steps");
    return w;
}

pathq::Algorithm parse_algorithm(const std::string &text) {
    const auto a = pathq::parse_run_algorithm(text);
    if (a == pathq::RunAlgorithm::pathsum_only)
        throw pathq::Error(pathq::Errc::invalid_argument, "circuit commands need algorithm I or II");
    return a == pathq::RunAlgorithm::two ? pathq::Algorithm::two : pathq::Algorithm::one;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Path-integral quantum circuits for open-system dynamics"};
    app.require_subcommand(1);

    CommonOptions common;
    std::optional<int> steps;
    std::optional<int> memory;
    std::string output;
    std::string algorithm = "I";

    auto *coeffs = app.add_subcommand("coeffs", "Influence-functional coefficient table as CSV");
    add_common(coeffs, common);
    coeffs->add_option("--steps", steps, "Number of time steps N");
    coeffs->add_option("--memory", memory, "Memory length L (0 = N)");
    coeffs->add_option("-o,--output", output, "Output CSV (default stdout)");

    auto *pathsum = app.add_subcommand("pathsum", "Exact path-sum population trajectory as CSV");
    add_common(pathsum, common);
    pathsum->add_option("--steps", steps, "Last time step");
    pathsum->add_option("--memory", memory, "Memory length L (0 = unlimited)");
    pathsum->add_option("-o,--output", output, "Output CSV (default stdout)");

    int probe = 0;
    std::string format = "gates";
    auto *circuit = app.add_subcommand("circuit", "Build one probe circuit and export it");
    add_common(circuit, common);
    circuit->add_option("--steps", steps, "Number of time steps N");
    circuit->add_option("--memory", memory, "Memory length L (0 = N)");
    circuit->add_option("--algorithm", algorithm, "I or II");
    circuit->add_option("--probe", probe, "Probed level");
    circuit->add_option("--format", format, "gates or qasm")->check(CLI::IsMember({"gates", "qasm"}));
    circuit->add_option("-o,--output", output, "Output file (default stdout)");

    auto *simulate = app.add_subcommand("simulate", "Run the configured shot-sampled experiment");
    add_common(simulate, common);
    simulate->add_option("-o,--output", output, "Population CSV (overrides the config; default stdout)");

    bool corrupt = false;
    int verify_steps = 3;
    auto *verify = app.add_subcommand("verify", "Run the invariant suite on a small instance");
    add_common(verify, common);
    verify->add_option("--max-steps", verify_steps, "Largest N exercised");
    verify->add_flag("--corrupt-alpha", corrupt, "Perturb alpha(1, 0) in the circuit path (fault injection)");

    int levels = 2;
    bool check_built = false;
    auto *resources = app.add_subcommand("resources", "Qubit and gate counts from the closed forms");
    resources->add_option("--levels", levels, "System levels n (power of two)");
    resources->add_option("--steps", steps, "Number of time steps N")->required();
    resources->add_option("--memory", memory, "Memory length L (0 = N)");
    resources->add_option("--algorithm", algorithm, "I or II");
    resources->add_flag("--check", check_built, "Also build the circuit and count its gates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (coeffs->parsed()) {
            const auto config = load_config(common);
            const auto w = resolve_window(config, steps, memory);
            const auto table = pathq::influence_coefficients(config.model.bath, config.model.dt, w.steps, w.memory);
            emit(output, [&](std::ostream &out) { pathq::write_coefficients_csv(out, table); });
        } else if (pathsum->parsed()) {
            const auto config = load_config(common);
            const int last = steps.value_or(config.schedule.back().step);
            const int window = memory.value_or(config.memory);
            const auto traj = pathq::rdm_trajectory(config.model, last, window, config.initial);
            emit(output, [&](std::ostream &out) { pathq::write_trajectory_csv(out, config.model.dt, traj); });
        } else if (circuit->parsed()) {
            const auto config = load_config(common);
            const auto w = resolve_window(config, steps, memory);
            pathq::ExperimentPlan plan;
            plan.model = config.model;
            plan.n_steps = w.steps;
            plan.memory = w.memory;
            plan.algorithm = parse_algorithm(algorithm);
            plan.initial = config.initial;
            plan.probe = probe;
            plan.simulator.max_qubits = config.max_qubits;
            plan.validate();
            const auto table = pathq::influence_coefficients(plan.model.bath, plan.model.dt, w.steps, w.memory);
            const auto built = pathq::build_probe_circuits(plan, table).at(static_cast<std::size_t>(probe));
            emit(output, [&](std::ostream &out) {
                if (format == "qasm")
                    pathq::write_qasm(out, built.circuit, built.success_qubits);
                else
                    pathq::write_gate_list(out, built.circuit);
            });
        } else if (simulate->parsed()) {
            auto config = load_config(common);
            if (!output.empty()) config.output = output;
            const auto traj = pathq::run_and_export(config);
            if (config.output.empty()) pathq::write_population_csv(std::cout, config, traj);
        } else if (verify->parsed()) {
            pathq::VerifyOptions options;
            if (!common.preset_name.empty() || !common.config_path.empty() || !common.overrides.empty())
                options.model = load_config(common).model;
            options.max_steps = verify_steps;
            options.corrupt_coefficient = corrupt;
            const auto report = pathq::verify(options);
            pathq::write_verify_report(std::cout, report);
            return report.passed() ? 0 : 1;
        } else if (resources->parsed()) {
            const int n_steps = *steps;
            const int window = memory && *memory > 0 ? *memory : n_steps;
            const auto alg = parse_algorithm(algorithm);
            const auto r = pathq::resource_counts(levels, n_steps, window, alg);
            std::cout << "levels " << levels << "\nsteps " << n_steps << "\nmemory " << window << "\nalgorithm "
                      << (alg == pathq::Algorithm::one ? "I" : "II") << "\nqubits " << r.qubits
                      << "\ncompact_operators " << r.compact_operators << "\nnative_gates " << r.native_gates
                      << "\ntoffolis " << r.toffolis << "\nchain_ancillas " << r.chain_ancillas << '\n';
            if (check_built) {
                std::vector<pathq::CompactOperator> ops;
                // Entries do not affect counts in dense synthesis; unit diagonals suffice.
                for (int e = 0; e < n_steps; ++e)
                    for (int l = e + 1; l <= std::min(n_steps, e + window); ++l)
                        ops.push_back({e, l, pathq::DiagonalOp::from_entries(std::vector<std::complex<double>>(
                                                 static_cast<std::size_t>(levels * levels * levels * levels), 1.0))});
                const auto built = pathq::assemble_circuit(ops, levels, n_steps, alg, 0, 0, {.dense = true}, 64);
                const auto m = pathq::measure_resources(built);
                const bool ok = m.qubits == r.qubits && m.native_gates == r.native_gates && m.toffolis == r.toffolis;
                std::cout << "built_qubits " << m.qubits << "\nbuilt_native_gates " << m.native_gates
                          << "\nbuilt_toffolis " << m.toffolis << "\ncheck " << (ok ? "ok" : "MISMATCH") << '\n';
                if (!ok) return 1;
            }
        }
    } catch (const pathq::Error &e) {
        std::cerr << "error[" << pathq::to_string(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
