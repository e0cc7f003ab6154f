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

// Path-integral measurement circuits.
//
// Every time point k = 0..N owns a forward and a backward level register.
// The endpoints are prepared in the initial and probed basis states, the
// interior registers are put in uniform superposition, and each pair of
// coupled time points gets one dilated diagonal ("compact operator") that
// multiplies in the propagator and influence-functional weights. Closing the
// interior registers with Hadamards sums over paths, so the all-zeros
// amplitude is proportional to rho(probe, probe).
//
// Algorithm I measures the whole register. Algorithm II copies the
// all-zeros event onto one readout qubit through a Toffoli chain.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "pathq/bath.hpp"
#include "pathq/circuit.hpp"
#include "pathq/pathsum.hpp"
#include "pathq/synthesis.hpp"

namespace pathq {

enum class Algorithm { one, two };

/// Weights coupling time points (earlier, later). Diagonal index bits are
/// ordered (later forward, later backward, earlier forward, earlier backward),
/// most significant first; level index i is written in log2(n) bits and maps
/// to DVR value dvr_values[i].
struct CompactOperator {
    int earlier = 0;
    int later = 0;
    DiagonalOp diagonal;
};

/// One operator per pair with 1 <= later - earlier <= memory, ordered by
/// earlier then later. Nearest-neighbour operators carry the propagator and
/// the earlier point's self term; the final self term is folded into
/// (max(0, N - memory), N).
std::vector<CompactOperator> combine(const SpinBosonModel &model, const CoeffTable &table, int n_steps,
                                     int memory);

/// Qubit assignment. Time-point registers come first (forward then backward
/// per time point), then one dilation ancilla per compact operator; Algorithm
/// II appends Q - 2 chain ancillas and the readout qubit, where Q is the
/// Algorithm I width.
struct RegisterLayout {
    int level_bits = 1;
    int n_steps = 1;
    int n_operators = 1;
    Algorithm algorithm = Algorithm::one;

    int forward(int time, int bit) const noexcept { return (2 * time) * level_bits + bit; }
    int backward(int time, int bit) const noexcept { return (2 * time + 1) * level_bits + bit; }
    int dilation(int i) const noexcept { return 2 * (n_steps + 1) * level_bits + i; }
    int algorithm_one_width() const noexcept { return 2 * (n_steps + 1) * level_bits + n_operators; }
    int chain(int i) const noexcept { return algorithm_one_width() + i; }
    int readout() const noexcept { return 2 * algorithm_one_width() - 2; }
    int total() const noexcept {
        return algorithm == Algorithm::one ? algorithm_one_width() : 2 * algorithm_one_width() - 1;
    }
};

struct ExperimentPlan {
    SpinBosonModel model;
    int n_steps = 1;
    int memory = 1;
    Algorithm algorithm = Algorithm::one;
    int initial = 0;
    int probe = 0;
    std::uint64_t shots = 1000;
    int runs = 1;
    std::uint64_t seed = 0;
    WalshOptions synthesis{.dense = true};
    QuadratureOptions quadrature;
    SimulatorOptions simulator;

    /// Throws Error(invalid_argument) unless 1 <= memory <= n_steps, shots and
    /// runs are positive, n is a power of two and initial/probe are levels.
    void validate() const;
};

/// A built measurement circuit plus the event whose probability encodes the
/// probed population.
struct BuiltCircuit {
    Circuit circuit;
    RegisterLayout layout;
    int probe = 0;
    std::vector<int> success_qubits;
    std::vector<int> success_values;
};

/// Builds the circuit for `probe` from explicit compact operators. `max_qubits`
/// bounds the densely simulated width (the Algorithm I register); throws
/// Error(cap_exceeded) above it.
BuiltCircuit assemble_circuit(const std::vector<CompactOperator> &operators, int n_levels, int n_steps,
                              Algorithm algorithm, int initial, int probe, const WalshOptions &synthesis = {.dense = true},
                              int max_qubits = 26);

/// Probe circuits for every level 0..n-1 (a pair for two levels). The plan's
/// algorithm and probe fields are ignored.
std::vector<BuiltCircuit> build_algorithm_I(const ExperimentPlan &plan);
std::vector<BuiltCircuit> build_algorithm_II(const ExperimentPlan &plan);
/// Circuits for plan.algorithm; `table` must match (n_steps, memory).
std::vector<BuiltCircuit> build_probe_circuits(const ExperimentPlan &plan, const CoeffTable &table);

/// Probability of the success event. The quantum prefix is simulated densely;
/// the trailing block of X/CNOT/TOFFOLI gates (the Algorithm II chain) is a
/// basis-state permutation and is applied classically, so chain ancillas and
/// the readout never enter the statevector.
double exact_success_probability(const BuiltCircuit &built, const SimulatorOptions &options = {});

/// p_i = sqrt(s_i) / sum_j sqrt(s_j). Throws Error(insufficient_shots) when
/// every input is zero.
std::vector<double> estimate_populations(std::span<const double> success);
std::pair<double, double> estimate_populations(double success0, double success1);

/// Exact-amplitude populations for the plan (no shot noise).
std::vector<double> exact_populations(const ExperimentPlan &plan);

/// Number of successes in `shots` Bernoulli trials. Equals the marginal count
/// of the success outcome in a full multinomial draw.
std::uint64_t sample_success(double probability, std::uint64_t shots, std::mt19937_64 &rng);

/// Generator for (seed, step, run, probe); a fixed tuple always yields the same stream.
std::mt19937_64 derived_rng(std::uint64_t seed, int step, int run, int probe);

struct ResourceReport {
    int qubits = 0;
    std::size_t native_gates = 0;  // RZ + CNOT
    std::size_t toffolis = 0;
    int compact_operators = 0;
    int chain_ancillas = 0;
};

/// Closed forms: operators (2N - L + 1) L / 2; Algorithm I qubits
/// 2 (N + 1) log2 n + operators; native gates (4 n^4 - 3) * operators;
/// Algorithm II adds Q - 1 qubits and 2 (Q - 2) Toffolis.
ResourceReport resource_counts(int n_levels, int n_steps, int memory, Algorithm algorithm);

/// The same report measured on a built circuit.
ResourceReport measure_resources(const BuiltCircuit &built);

}  // namespace pathq
