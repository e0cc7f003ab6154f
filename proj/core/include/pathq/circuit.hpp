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

// Gate-level circuit representation and a dense statevector simulator.
//
// Bit convention: in an n-qubit register, qubit q is bit (n - 1 - q) of the
// basis index, i.e. qubit 0 is the most significant bit. Measurement strings
// list qubit 0 first.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathq {

enum class GateKind { h, x, rz, cnot, toffoli, global_phase };

std::string_view gate_name(GateKind kind) noexcept;
int gate_arity(GateKind kind) noexcept;

/// RZ(theta) = diag(exp(-i theta/2), exp(i theta/2)); GLOBAL_PHASE(phi)
/// multiplies every amplitude by exp(i phi). For CNOT the operands are
/// (control, target); for TOFFOLI (control, control, target).
struct Gate {
    GateKind kind = GateKind::global_phase;
    std::array<int, 3> qubits{-1, -1, -1};
    double angle = 0.0;

    static Gate h(int q) { return {GateKind::h, {q, -1, -1}, 0.0}; }
    static Gate x(int q) { return {GateKind::x, {q, -1, -1}, 0.0}; }
    static Gate rz(int q, double theta) { return {GateKind::rz, {q, -1, -1}, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::cnot, {control, target, -1}, 0.0}; }
    static Gate toffoli(int c0, int c1, int target) { return {GateKind::toffoli, {c0, c1, target}, 0.0}; }
    static Gate global_phase(double phi) { return {GateKind::global_phase, {-1, -1, -1}, phi}; }

    int arity() const noexcept { return gate_arity(kind); }
    std::span<const int> operands() const noexcept {
        return {qubits.data(), static_cast<std::size_t>(arity())};
    }
};

enum class QubitRole { unassigned, forward, backward, dilation_ancilla, chain_ancilla, readout };

std::string_view role_name(QubitRole role) noexcept;

/// `index` is the time point for forward/backward qubits (with `bit` the
/// position inside a multi-qubit level register) and the ordinal for ancillas.
struct QubitLabel {
    QubitRole role = QubitRole::unassigned;
    int index = -1;
    int bit = 0;
};

struct GateCounts {
    std::size_t h = 0;
    std::size_t x = 0;
    std::size_t rz = 0;
    std::size_t cnot = 0;
    std::size_t toffoli = 0;
    std::size_t global_phase = 0;

    /// RZ and CNOT, the gates counted by the synthesis cost formulas.
    std::size_t native() const noexcept { return rz + cnot; }
};

class Circuit {
  public:
    explicit Circuit(int n_qubits = 0);

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }

    /// Throws Error(malformed_gate) on bad operand count, out-of-range or
    /// repeated operands.
    void add(const Gate &gate);
    /// Appends `other`'s gates; `other` may be narrower than this circuit.
    void append(const Circuit &other);

    void set_label(int qubit, QubitLabel label);
    const QubitLabel &label(int qubit) const;

    GateCounts counts() const noexcept;

  private:
    int n_qubits_;
    std::vector<Gate> gates_;
    std::vector<QubitLabel> labels_;
};

void validate_gate(const Gate &gate, int n_qubits);

struct SimulatorOptions {
    int max_qubits = 26;
};

class Statevector {
  public:
    /// |basis_index> on n_qubits.
    Statevector(int n_qubits, std::uint64_t basis_index, const SimulatorOptions &options = {});
    /// Takes ownership of explicit amplitudes; size must be 2^n_qubits.
    Statevector(int n_qubits, std::vector<std::complex<double>> amplitudes);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const std::complex<double>> amplitudes() const noexcept { return amps_; }
    std::complex<double> amplitude(std::uint64_t index) const { return amps_.at(index); }

    void apply(const Gate &gate);
    void apply(const Circuit &circuit);

    double norm() const noexcept;
    double probability(std::uint64_t index) const { return std::norm(amps_.at(index)); }
    /// Probability that every listed qubit reads the matching value.
    double marginal_probability(std::span<const int> qubits, std::span<const int> values) const;

  private:
    std::uint64_t mask(int qubit) const noexcept { return std::uint64_t{1} << (n_qubits_ - 1 - qubit); }

    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

/// Runs the circuit from |initial>. Throws Error(cap_exceeded) above
/// options.max_qubits.
Statevector simulate(const Circuit &circuit, std::uint64_t initial = 0, const SimulatorOptions &options = {});

/// Multinomial draw of `shots` measurements of every qubit. Keys are basis
/// strings with qubit 0 first. Deterministic for a given seed.
std::map<std::string, std::uint64_t> sample(const Statevector &state, std::uint64_t shots, std::uint64_t seed);

std::string basis_string(std::uint64_t index, int n_qubits);

/// Column j is simulate(circuit, j). Limited to `max_qubits` (at most 12).
Eigen::MatrixXcd unitary_of(const Circuit &circuit, int max_qubits = 12);

/// One gate per line: `KIND q0 [q1 [q2]] [angle]`, preceded by a `#` header.
void write_gate_list(std::ostream &out, const Circuit &circuit);

/// OpenQASM 2 rendering (h/x/rz/cx/ccx). Global phases become comments;
/// `measured` qubits get measure statements into a classical register.
void write_qasm(std::ostream &out, const Circuit &circuit, std::span<const int> measured = {});

}  // namespace pathq
