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

#include "pathq/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pathq/error.hpp"

namespace pathq {

namespace {

using cd = std::complex<double>;

int level_bits_of(int n_levels) {
    if (n_levels < 2 || !std::has_single_bit(static_cast<unsigned>(n_levels)))
        throw Error(Errc::invalid_argument, "circuit construction needs a power-of-two level count");
    return std::countr_zero(static_cast<unsigned>(n_levels));
}

int operator_count(int n_steps, int memory) { return (2 * n_steps - memory + 1) * memory / 2; }

// Product of every weight the (earlier, later) operator carries, before rescaling.
cd compact_weight(const SpinBosonModel &model, const Eigen::MatrixXcd &u, const CoeffTable &table, int n_steps,
                  int memory, int earlier, int later, int lp, int lm, int ep, int em) {
    const auto &s = model.dvr_values;
    cd w{1.0, 0.0};
    if (later == earlier + 1) {
        w *= u(lp, ep) * std::conj(u(lm, em));
        w *= influence_factor(earlier, earlier, s[ep], s[em], s[ep], s[em], table);
    }
    w *= influence_factor(later, earlier, s[lp], s[lm], s[ep], s[em], table);
    if (later == n_steps && earlier == std::max(0, n_steps - memory))
        w *= influence_factor(n_steps, n_steps, s[lp], s[lm], s[lp], s[lm], table);
    return w;
}

void prepare_basis(Circuit &c, const RegisterLayout &layout, int time, int level) {
    for (int b = 0; b < layout.level_bits; ++b) {
        if ((level >> (layout.level_bits - 1 - b)) & 1) {
            c.add(Gate::x(layout.forward(time, b)));
            c.add(Gate::x(layout.backward(time, b)));
        }
    }
}

void label_register(Circuit &c, const RegisterLayout &layout) {
    for (int k = 0; k <= layout.n_steps; ++k) {
        for (int b = 0; b < layout.level_bits; ++b) {
            c.set_label(layout.forward(k, b), {QubitRole::forward, k, b});
            c.set_label(layout.backward(k, b), {QubitRole::backward, k, b});
        }
    }
    for (int i = 0; i < layout.n_operators; ++i) c.set_label(layout.dilation(i), {QubitRole::dilation_ancilla, i, 0});
    if (layout.algorithm == Algorithm::two) {
        for (int i = 0; i < layout.algorithm_one_width() - 2; ++i)
            c.set_label(layout.chain(i), {QubitRole::chain_ancilla, i, 0});
        c.set_label(layout.readout(), {QubitRole::readout, 0, 0});
    }
}

}  // namespace

std::vector<CompactOperator> combine(const SpinBosonModel &model, const CoeffTable &table, int n_steps,
                                     int memory) {
    model.validate();
    const int n = model.n_levels();
    level_bits_of(n);
    if (n_steps < 1 || memory < 1 || memory > n_steps)
        throw Error(Errc::invalid_argument, "combine needs 1 <= memory <= n_steps");
    if (table.n_steps() != n_steps || table.memory() < memory)
        throw Error(Errc::inconsistent_table, "coefficient table does not span (n_steps, memory)");
    if (std::abs(table.dt() - model.dt) > 1e-15 * std::max(1.0, model.dt))
        throw Error(Errc::inconsistent_table, "coefficient table dt differs from the model dt");

    const Eigen::MatrixXcd u = bare_propagator(model);
    std::vector<CompactOperator> ops;
    ops.reserve(static_cast<std::size_t>(operator_count(n_steps, memory)));
    for (int earlier = 0; earlier < n_steps; ++earlier) {
        for (int later = earlier + 1; later <= std::min(n_steps, earlier + memory); ++later) {
            std::vector<cd> raw(static_cast<std::size_t>(n * n * n * n));
            for (int lp = 0; lp < n; ++lp)
                for (int lm = 0; lm < n; ++lm)
                    for (int ep = 0; ep < n; ++ep)
                        for (int em = 0; em < n; ++em)
                            raw[static_cast<std::size_t>(((lp * n + lm) * n + ep) * n + em)] =
                                compact_weight(model, u, table, n_steps, memory, earlier, later, lp, lm, ep, em);
            ops.push_back({earlier, later, DiagonalOp::from_entries(std::move(raw))});
        }
    }
    return ops;
}

void ExperimentPlan::validate() const {
    model.validate();
    level_bits_of(model.n_levels());
    if (n_steps < 1) throw Error(Errc::invalid_argument, "n_steps must be >= 1");
    if (memory < 1 || memory > n_steps) throw Error(Errc::invalid_argument, "memory must satisfy 1 <= L <= N");
    if (shots < 1) throw Error(Errc::invalid_argument, "shots must be >= 1");
    if (runs < 1) throw Error(Errc::invalid_argument, "runs must be >= 1");
    if (initial < 0 || initial >= model.n_levels() || probe < 0 || probe >= model.n_levels())
        throw Error(Errc::invalid_argument, "initial and probe must be level indices");
}

BuiltCircuit assemble_circuit(const std::vector<CompactOperator> &operators, int n_levels, int n_steps,
                              Algorithm algorithm, int initial, int probe, const WalshOptions &synthesis,
                              int max_qubits) {
    RegisterLayout layout;
    layout.level_bits = level_bits_of(n_levels);
    layout.n_steps = n_steps;
    layout.n_operators = static_cast<int>(operators.size());
    layout.algorithm = algorithm;
    if (initial < 0 || initial >= n_levels || probe < 0 || probe >= n_levels)
        throw Error(Errc::invalid_argument, "initial and probe must be level indices");
    if (layout.algorithm_one_width() > max_qubits)
        throw Error(Errc::cap_exceeded, "circuit needs " + std::to_string(layout.algorithm_one_width()) +
                                            " qubits, above the cap of " + std::to_string(max_qubits));

    BuiltCircuit built{Circuit(layout.total()), layout, probe, {}, {}};
    Circuit &c = built.circuit;
    label_register(c, layout);

    prepare_basis(c, layout, 0, initial);
    prepare_basis(c, layout, n_steps, probe);
    for (int k = 1; k < n_steps; ++k) {
        for (int b = 0; b < layout.level_bits; ++b) {
            c.add(Gate::h(layout.forward(k, b)));
            c.add(Gate::h(layout.backward(k, b)));
        }
    }

    for (std::size_t i = 0; i < operators.size(); ++i) {
        const auto &op = operators[i];
        if (op.earlier < 0 || op.later <= op.earlier || op.later > n_steps)
            throw Error(Errc::invalid_argument, "compact operator couples invalid time points");
        std::vector<int> targets;
        for (const auto &[time, backward] : {std::pair{op.later, false}, std::pair{op.later, true},
                                             std::pair{op.earlier, false}, std::pair{op.earlier, true}}) {
            for (int b = 0; b < layout.level_bits; ++b)
                targets.push_back(backward ? layout.backward(time, b) : layout.forward(time, b));
        }
        append_diagonal(c, op.diagonal, targets, layout.dilation(static_cast<int>(i)), synthesis);
    }

    for (int k = 1; k < n_steps; ++k) {
        for (int b = 0; b < layout.level_bits; ++b) {
            c.add(Gate::h(layout.forward(k, b)));
            c.add(Gate::h(layout.backward(k, b)));
        }
    }
    prepare_basis(c, layout, 0, initial);
    prepare_basis(c, layout, n_steps, probe);

    const int width = layout.algorithm_one_width();
    if (algorithm == Algorithm::one) {
        for (int q = 0; q < width; ++q) {
            built.success_qubits.push_back(q);
            built.success_values.push_back(0);
        }
        return built;
    }

    // Open controls: flip every measured qubit so the all-zeros event reads as all ones.
    for (int q = 0; q < width; ++q) c.add(Gate::x(q));
    // AND ladder over the Q controls into Q - 2 chain ancillas; the last
    // Toffoli writes the readout. Only the readout is measured, so the top
    // chain ancilla is left computed and the rest are uncomputed.
    c.add(Gate::toffoli(0, 1, layout.chain(0)));
    for (int i = 1; i <= width - 3; ++i) c.add(Gate::toffoli(i + 1, layout.chain(i - 1), layout.chain(i)));
    c.add(Gate::toffoli(width - 1, layout.chain(width - 3), layout.readout()));
    for (int i = width - 4; i >= 1; --i) c.add(Gate::toffoli(i + 1, layout.chain(i - 1), layout.chain(i)));
    if (width - 4 >= 0) c.add(Gate::toffoli(0, 1, layout.chain(0)));
    for (int q = 0; q < width; ++q) c.add(Gate::x(q));

    built.success_qubits = {layout.readout()};
    built.success_values = {1};
    return built;
}

std::vector<BuiltCircuit> build_probe_circuits(const ExperimentPlan &plan, const CoeffTable &table) {
    plan.validate();
    const auto ops = combine(plan.model, table, plan.n_steps, plan.memory);
    std::vector<BuiltCircuit> out;
    for (int probe = 0; probe < plan.model.n_levels(); ++probe) {
        out.push_back(assemble_circuit(ops, plan.model.n_levels(), plan.n_steps, plan.algorithm, plan.initial, probe,
                                       plan.synthesis, plan.simulator.max_qubits));
    }
    return out;
}

std::vector<BuiltCircuit> build_algorithm_I(const ExperimentPlan &plan) {
    auto p = plan;
    p.algorithm = Algorithm::one;
    p.validate();
    const auto table = influence_coefficients(p.model.bath, p.model.dt, p.n_steps, p.memory, p.quadrature);
    return build_probe_circuits(p, table);
}

std::vector<BuiltCircuit> build_algorithm_II(const ExperimentPlan &plan) {
    auto p = plan;
    p.algorithm = Algorithm::two;
    p.validate();
    const auto table = influence_coefficients(p.model.bath, p.model.dt, p.n_steps, p.memory, p.quadrature);
    return build_probe_circuits(p, table);
}

double exact_success_probability(const BuiltCircuit &built, const SimulatorOptions &options) {
    const auto &gates = built.circuit.gates();
    const int n = built.circuit.n_qubits();
    if (n > 64) throw Error(Errc::cap_exceeded, "exact evaluation is limited to 64 qubits");

    // The trailing X/CNOT/TOFFOLI block permutes basis states, so it is run
    // classically on every amplitude of the quantum prefix. Qubits the prefix
    // never touches stay |0> and are not stored.
    std::size_t split = gates.size();
    while (split > 0 && (gates[split - 1].kind == GateKind::x || gates[split - 1].kind == GateKind::cnot ||
                         gates[split - 1].kind == GateKind::toffoli))
        --split;
    std::vector<int> compressed(static_cast<std::size_t>(n), -1);
    std::vector<int> active;
    for (std::size_t g = 0; g < split; ++g) {
        for (int q : gates[g].operands()) {
            if (compressed[static_cast<std::size_t>(q)] < 0) {
                compressed[static_cast<std::size_t>(q)] = static_cast<int>(active.size());
                active.push_back(q);
            }
        }
    }
    const int m = static_cast<int>(active.size());
    Circuit prefix(m);
    for (std::size_t g = 0; g < split; ++g) {
        Gate mapped = gates[g];
        for (int i = 0; i < mapped.arity(); ++i) {
            auto &q = mapped.qubits[static_cast<std::size_t>(i)];
            q = compressed[static_cast<std::size_t>(q)];
        }
        prefix.add(mapped);
    }
    const auto state = simulate(prefix, 0, options);

    std::uint64_t want_mask = 0;
    std::uint64_t want_bits = 0;
    for (std::size_t i = 0; i < built.success_qubits.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << built.success_qubits[i];
        want_mask |= bit;
        if (built.success_values[i]) want_bits |= bit;
    }
    auto has = [](std::uint64_t bits, int q) { return ((bits >> q) & 1U) != 0; };
    double total = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        const double p = std::norm(amps[idx]);
        if (p == 0.0) continue;
        std::uint64_t bits = 0;
        for (int j = 0; j < m; ++j)
            if ((idx >> (m - 1 - j)) & 1U) bits |= std::uint64_t{1} << active[static_cast<std::size_t>(j)];
        for (std::size_t g = split; g < gates.size(); ++g) {
            const auto &q = gates[g].qubits;
            switch (gates[g].kind) {
                case GateKind::x: bits ^= std::uint64_t{1} << q[0]; break;
                case GateKind::cnot:
                    if (has(bits, q[0])) bits ^= std::uint64_t{1} << q[1];
                    break;
                case GateKind::toffoli:
                    if (has(bits, q[0]) && has(bits, q[1])) bits ^= std::uint64_t{1} << q[2];
                    break;
                default: break;
            }
        }
        if ((bits & want_mask) == want_bits) total += p;
    }
    return total;
}

std::vector<double> estimate_populations(std::span<const double> success) {
    std::vector<double> roots(success.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < success.size(); ++i) {
        if (!(success[i] >= 0.0)) throw Error(Errc::invalid_argument, "success statistics must be >= 0");
        roots[i] = std::sqrt(success[i]);
        sum += roots[i];
    }
    if (sum == 0.0) throw Error(Errc::insufficient_shots, "no probe circuit recorded a success; add shots");
    for (auto &r : roots) r /= sum;
    return roots;
}

std::pair<double, double> estimate_populations(double success0, double success1) {
    const double s[2] = {success0, success1};
    const auto p = estimate_populations(std::span<const double>(s, 2));
    return {p[0], 1.0 - p[0]};
}

std::vector<double> exact_populations(const ExperimentPlan &plan) {
    const auto circuits = plan.algorithm == Algorithm::one ? build_algorithm_I(plan) : build_algorithm_II(plan);
    std::vector<double> success;
    for (const auto &c : circuits) success.push_back(exact_success_probability(c, plan.simulator));
    return estimate_populations(success);
}

std::uint64_t sample_success(double probability, std::uint64_t shots, std::mt19937_64 &rng) {
    const double p = std::clamp(probability, 0.0, 1.0);
    if (p == 0.0) return 0;
    if (p == 1.0) return shots;
    std::binomial_distribution<std::uint64_t> dist(shots, p);
    return dist(rng);
}

std::mt19937_64 derived_rng(std::uint64_t seed, int step, int run, int probe) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(run),
                      static_cast<std::uint32_t>(probe)};
    return std::mt19937_64(seq);
}

ResourceReport resource_counts(int n_levels, int n_steps, int memory, Algorithm algorithm) {
    const int bits = level_bits_of(n_levels);
    if (n_steps < 1 || memory < 1 || memory > n_steps)
        throw Error(Errc::invalid_argument, "resource counts need 1 <= memory <= n_steps");
    ResourceReport r;
    r.compact_operators = operator_count(n_steps, memory);
    const int width = 2 * (n_steps + 1) * bits + r.compact_operators;
    const auto n = static_cast<std::size_t>(n_levels);
    r.native_gates = (4 * n * n * n * n - 3) * static_cast<std::size_t>(r.compact_operators);
    if (algorithm == Algorithm::one) {
        r.qubits = width;
    } else {
        r.chain_ancillas = width - 2;
        r.qubits = width + r.chain_ancillas + 1;
        r.toffolis = 2 * static_cast<std::size_t>(width - 2);
    }
    return r;
}

ResourceReport measure_resources(const BuiltCircuit &built) {
    const auto counts = built.circuit.counts();
    ResourceReport r;
    r.qubits = built.circuit.n_qubits();
    r.native_gates = counts.native();
    r.toffolis = counts.toffoli;
    r.compact_operators = built.layout.n_operators;
    for (int q = 0; q < built.circuit.n_qubits(); ++q)
        if (built.circuit.label(q).role == QubitRole::chain_ancilla) ++r.chain_ancillas;
    return r;
}

}  // namespace pathq
