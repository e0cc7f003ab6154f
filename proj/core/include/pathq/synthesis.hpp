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

// Exact circuits for complex diagonal operators.
//
// A contraction diag(sigma) is embedded as the ancilla-|0> block of the
// unitary H_a diag(I+, I-) H_a, and the unitary diagonal is written as a
// product of exponentials of Z-parity (Walsh) operators, each realized by a
// CNOT ladder around one RZ.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pathq/circuit.hpp"

namespace pathq {

/// Diagonal operator on q qubits, stored after rescaling so that every
/// |entry| <= 1. `scale` is the factor that was divided out (>= 1).
struct DiagonalOp {
    std::vector<std::complex<double>> entries;
    double scale = 1.0;

    /// Rescales by max |sigma_j| when that exceeds 1. Size must be a power of
    /// two (>= 2) and every entry finite.
    static DiagonalOp from_entries(std::vector<std::complex<double>> raw);

    int num_qubits() const noexcept;
};

/// diag(I+, I-) with I+- = sigma (1 +- i sqrt(1 - |sigma|^2) / |sigma|); a zero
/// entry maps to +-i. The first half of the result is I+.
std::vector<std::complex<double>> dilate(const DiagonalOp &op);

/// Walsh coefficients a_j of a phase table f_k, f_k = sum_j (-1)^popcount(j & k) a_j.
/// Bit b of j and k refers to the same qubit.
struct WalshSpec {
    int num_qubits = 0;
    std::vector<double> coefficients;

    /// Inverse transform back to f_k.
    std::vector<double> phases() const;
};

/// Fast Walsh-Hadamard transform, O(q 2^q). Throws on non-power-of-two length.
WalshSpec walsh_coefficients(std::span<const double> phases);

/// Principal arguments in (-pi, pi].
std::vector<double> principal_phases(std::span<const std::complex<double>> values);

enum class WalshOrdering { gray_code, naive };

struct WalshOptions {
    /// Dense emission keeps every term and yields exactly 2^(q+1) - 3 RZ+CNOT
    /// gates; sparse emission drops terms with |a_j| < skip_threshold.
    bool dense = false;
    WalshOrdering ordering = WalshOrdering::gray_code;
    double skip_threshold = 1e-14;
};

/// 2^(q+1) - 3 for q >= 1.
std::size_t dense_walsh_gate_count(int num_qubits) noexcept;

/// Emits prod_j exp(i a_j Z^j) on `targets`; targets[0] is the most
/// significant bit of the diagonal index. a_0 becomes a GLOBAL_PHASE.
void append_walsh(Circuit &circuit, const WalshSpec &spec, std::span<const int> targets,
                  const WalshOptions &options = {});
Circuit walsh_circuit(const WalshSpec &spec, std::span<const int> targets, int n_qubits,
                      const WalshOptions &options = {});

/// H(ancilla), Walsh circuit of dilate(op) on (ancilla, targets...),
/// H(ancilla). The ancilla-|0> block of the result equals op.entries.
void append_diagonal(Circuit &circuit, const DiagonalOp &op, std::span<const int> targets, int ancilla,
                     const WalshOptions &options = {});
Circuit synthesize_diagonal(const DiagonalOp &op, std::span<const int> targets, int ancilla, int n_qubits,
                            const WalshOptions &options = {});

}  // namespace pathq
