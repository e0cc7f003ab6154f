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

#include "pathq/circuit.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <utility>

#include "pathq/error.hpp"
#include "pathq/format.hpp"

namespace pathq {

using cd = std::complex<double>;

std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::h: return "H";
        case GateKind::x: return "X";
        case GateKind::rz: return "RZ";
        case GateKind::cnot: return "CNOT";
        case GateKind::toffoli: return "TOFFOLI";
        case GateKind::global_phase: return "GLOBAL_PHASE";
    }
    return "?";
}

int gate_arity(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::h:
        case GateKind::x:
        case GateKind::rz: return 1;
        case GateKind::cnot: return 2;
        case GateKind::toffoli: return 3;
        case GateKind::global_phase: return 0;
    }
    return 0;
}

std::string_view role_name(QubitRole role) noexcept {
    switch (role) {
        case QubitRole::unassigned: return "unassigned";
        case QubitRole::forward: return "forward";
        case QubitRole::backward: return "backward";
        case QubitRole::dilation_ancilla: return "dilation_ancilla";
        case QubitRole::chain_ancilla: return "chain_ancilla";
        case QubitRole::readout: return "readout";
    }
    return "?";
}

void validate_gate(const Gate &gate, int n_qubits) {
    const int arity = gate.arity();
    for (int i = 0; i < 3; ++i) {
        const int q = gate.qubits[static_cast<std::size_t>(i)];
        if (i < arity) {
            if (q < 0 || q >= n_qubits)
                throw Error(Errc::malformed_gate, std::string(gate_name(gate.kind)) + " operand " + std::to_string(q) +
                                                      " outside register of " + std::to_string(n_qubits));
            for (int j = 0; j < i; ++j) {
                if (gate.qubits[static_cast<std::size_t>(j)] == q)
                    throw Error(Errc::malformed_gate, std::string(gate_name(gate.kind)) + " repeats operand " +
                                                          std::to_string(q));
            }
        } else if (q != -1) {
            throw Error(Errc::malformed_gate,
                        std::string(gate_name(gate.kind)) + " takes " + std::to_string(arity) + " operands");
        }
    }
    if (!std::isfinite(gate.angle)) throw Error(Errc::malformed_gate, "gate angle must be finite");
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits), labels_(static_cast<std::size_t>(std::max(0, n_qubits))) {
    if (n_qubits < 0) throw Error(Errc::invalid_argument, "qubit count must be >= 0");
}

void Circuit::add(const Gate &gate) {
    validate_gate(gate, n_qubits_);
    gates_.push_back(gate);
}

void Circuit::append(const Circuit &other) {
    if (other.n_qubits_ > n_qubits_) throw Error(Errc::invalid_argument, "appended circuit is wider than target");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void Circuit::set_label(int qubit, QubitLabel label) { labels_.at(static_cast<std::size_t>(qubit)) = label; }

const QubitLabel &Circuit::label(int qubit) const { return labels_.at(static_cast<std::size_t>(qubit)); }

GateCounts Circuit::counts() const noexcept {
    GateCounts c;
    for (const auto &g : gates_) {
        switch (g.kind) {
            case GateKind::h: ++c.h; break;
            case GateKind::x: ++c.x; break;
            case GateKind::rz: ++c.rz; break;
            case GateKind::cnot: ++c.cnot; break;
            case GateKind::toffoli: ++c.toffoli; break;
            case GateKind::global_phase: ++c.global_phase; break;
        }
    }
    return c;
}

namespace {

void check_cap(int n_qubits, int cap) {
    if (n_qubits > cap || n_qubits > 62)
        throw Error(Errc::cap_exceeded, "register of " + std::to_string(n_qubits) +
                                            " qubits exceeds the simulator cap of " + std::to_string(cap));
}

}  // namespace

Statevector::Statevector(int n_qubits, std::uint64_t basis_index, const SimulatorOptions &options)
    : n_qubits_(n_qubits) {
    if (n_qubits < 0) throw Error(Errc::invalid_argument, "qubit count must be >= 0");
    check_cap(n_qubits, options.max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (basis_index >= dim) throw Error(Errc::invalid_argument, "basis index outside the register");
    amps_.assign(dim, cd{});
    amps_[basis_index] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<std::complex<double>> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 0 || n_qubits > 62 || amps_.size() != (std::uint64_t{1} << n_qubits))
        throw Error(Errc::invalid_argument, "amplitude vector size must be 2^n_qubits");
}

void Statevector::apply(const Gate &gate) {
    validate_gate(gate, n_qubits_);
    const std::uint64_t dim = amps_.size();
    switch (gate.kind) {
        case GateKind::h: {
            const std::uint64_t m = mask(gate.qubits[0]);
            const double r = std::numbers::sqrt2 / 2.0;
            for (std::uint64_t base = 0; base < dim; base += 2 * m) {
                for (std::uint64_t i = base; i < base + m; ++i) {
                    const cd a = amps_[i];
                    const cd b = amps_[i | m];
                    amps_[i] = r * (a + b);
                    amps_[i | m] = r * (a - b);
                }
            }
            break;
        }
        case GateKind::x: {
            const std::uint64_t m = mask(gate.qubits[0]);
            for (std::uint64_t base = 0; base < dim; base += 2 * m)
                for (std::uint64_t i = base; i < base + m; ++i) std::swap(amps_[i], amps_[i | m]);
            break;
        }
        case GateKind::rz: {
            const std::uint64_t m = mask(gate.qubits[0]);
            const cd lo = std::polar(1.0, -0.5 * gate.angle);
            const cd hi = std::polar(1.0, 0.5 * gate.angle);
            for (std::uint64_t i = 0; i < dim; ++i) amps_[i] *= (i & m) ? hi : lo;
            break;
        }
        case GateKind::cnot: {
            const std::uint64_t c = mask(gate.qubits[0]);
            const std::uint64_t t = mask(gate.qubits[1]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
            break;
        }
        case GateKind::toffoli: {
            const std::uint64_t c = mask(gate.qubits[0]) | mask(gate.qubits[1]);
            const std::uint64_t t = mask(gate.qubits[2]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & c) == c && !(i & t)) std::swap(amps_[i], amps_[i | t]);
            break;
        }
        case GateKind::global_phase: {
            const cd phase = std::polar(1.0, gate.angle);
            for (auto &a : amps_) a *= phase;
            break;
        }
    }
}

void Statevector::apply(const Circuit &circuit) {
    if (circuit.n_qubits() != n_qubits_) throw Error(Errc::invalid_argument, "circuit width does not match state");
    for (const auto &g : circuit.gates()) apply(g);
}

double Statevector::norm() const noexcept {
    double s = 0.0;
    for (const auto &a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

double Statevector::marginal_probability(std::span<const int> qubits, std::span<const int> values) const {
    if (qubits.size() != values.size()) throw Error(Errc::invalid_argument, "qubit/value lists differ in length");
    std::uint64_t care = 0;
    std::uint64_t want = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= n_qubits_) throw Error(Errc::invalid_argument, "qubit out of range");
        care |= mask(qubits[i]);
        if (values[i]) want |= mask(qubits[i]);
    }
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & care) == want) p += std::norm(amps_[i]);
    return p;
}

Statevector simulate(const Circuit &circuit, std::uint64_t initial, const SimulatorOptions &options) {
    Statevector state(circuit.n_qubits(), initial, options);
    state.apply(circuit);
    return state;
}

std::string basis_string(std::uint64_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if ((index >> (n_qubits - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

std::map<std::string, std::uint64_t> sample(const Statevector &state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw Error(Errc::invalid_argument, "shots must be >= 1");
    const auto amps = state.amplitudes();
    double mass = 0.0;
    for (const auto &a : amps) mass += std::norm(a);

    // Sequential conditional binomials: outcome i receives
    // Binomial(remaining shots, p_i / remaining mass).
    std::mt19937_64 rng(seed);
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t remaining = shots;
    for (std::uint64_t i = 0; i < amps.size() && remaining > 0; ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        double q = mass > 0.0 ? p / mass : 1.0;
        std::uint64_t drawn = remaining;
        if (q < 1.0) {
            std::binomial_distribution<std::uint64_t> dist(remaining, std::max(0.0, q));
            drawn = dist(rng);
        }
        mass -= p;
        if (drawn > 0) {
            counts[basis_string(i, state.n_qubits())] = drawn;
            remaining -= drawn;
        }
    }
    if (remaining > 0) {
        // Rounding left mass on the table; give it to the last nonzero outcome.
        for (std::uint64_t i = amps.size(); i-- > 0;) {
            if (std::norm(amps[i]) > 0.0) {
                counts[basis_string(i, state.n_qubits())] += remaining;
                break;
            }
        }
    }
    return counts;
}

Eigen::MatrixXcd unitary_of(const Circuit &circuit, int max_qubits) {
    const int cap = std::min(max_qubits, 12);
    if (circuit.n_qubits() > cap)
        throw Error(Errc::cap_exceeded, "unitary extraction is limited to " + std::to_string(cap) + " qubits");
    const std::uint64_t dim = std::uint64_t{1} << circuit.n_qubits();
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t j = 0; j < dim; ++j) {
        const auto state = simulate(circuit, j);
        for (std::uint64_t i = 0; i < dim; ++i)
            u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = state.amplitudes()[i];
    }
    return u;
}

void write_gate_list(std::ostream &out, const Circuit &circuit) {
    out << "# pathq gate list\n# qubits " << circuit.n_qubits() << '\n';
    for (const auto &g : circuit.gates()) {
        out << gate_name(g.kind);
        for (const int q : g.operands()) out << ' ' << q;
        if (g.kind == GateKind::rz || g.kind == GateKind::global_phase) out << ' ' << format_double(g.angle);
        out << '\n';
    }
}

void write_qasm(std::ostream &out, const Circuit &circuit, std::span<const int> measured) {
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.n_qubits() << "];\n";
    if (!measured.empty()) out << "creg c[" << measured.size() << "];\n";
    for (const auto &g : circuit.gates()) {
        const auto &q = g.qubits;
        switch (g.kind) {
            case GateKind::h: out << "h q[" << q[0] << "];\n"; break;
            case GateKind::x: out << "x q[" << q[0] << "];\n"; break;
            case GateKind::rz: out << "rz(" << format_double(g.angle) << ") q[" << q[0] << "];\n"; break;
            case GateKind::cnot: out << "cx q[" << q[0] << "],q[" << q[1] << "];\n"; break;
            case GateKind::toffoli:
                out << "ccx q[" << q[0] << "],q[" << q[1] << "],q[" << q[2] << "];\n";
                break;
            case GateKind::global_phase: out << "// global phase " << format_double(g.angle) << '\n'; break;
        }
    }
    for (std::size_t i = 0; i < measured.size(); ++i)
        out << "measure q[" << measured[i] << "] -> c[" << i << "];\n";
}

}  // namespace pathq
