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

#include "pathq/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "pathq/error.hpp"

namespace pathq {

namespace {

using cd = std::complex<double>;

constexpr double kModulusSlack = 1e-12;

bool is_power_of_two(std::size_t n) { return n >= 1 && std::has_single_bit(n); }

void fwht(std::vector<double> &v) {
    for (std::size_t h = 1; h < v.size(); h *= 2) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

DiagonalOp DiagonalOp::from_entries(std::vector<std::complex<double>> raw) {
    if (raw.size() < 2 || !is_power_of_two(raw.size()))
        throw Error(Errc::invalid_argument, "diagonal size must be a power of two >= 2");
    double largest = 0.0;
    for (const auto &z : raw) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(Errc::invalid_argument, "diagonal entries must be finite");
        largest = std::max(largest, std::abs(z));
    }
    DiagonalOp op;
    op.scale = largest > 1.0 ? largest : 1.0;
    op.entries = std::move(raw);
    if (op.scale != 1.0)
        for (auto &z : op.entries) z /= op.scale;
    return op;
}

int DiagonalOp::num_qubits() const noexcept { return static_cast<int>(std::bit_width(entries.size()) - 1); }

std::vector<std::complex<double>> dilate(const DiagonalOp &op) {
    const std::size_t dim = op.entries.size();
    std::vector<cd> out(2 * dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const cd sigma = op.entries[j];
        const double r = std::abs(sigma);
        if (r > 1.0 + kModulusSlack)
            throw Error(Errc::invalid_argument, "dilation requires |sigma| <= 1; rescale first");
        if (r == 0.0) {
            out[j] = cd(0.0, 1.0);
            out[dim + j] = cd(0.0, -1.0);
            continue;
        }
        const double t = std::sqrt(std::max(0.0, 1.0 - r * r)) / r;
        out[j] = sigma * cd(1.0, t);
        out[dim + j] = sigma * cd(1.0, -t);
    }
    return out;
}

std::vector<double> WalshSpec::phases() const {
    auto f = coefficients;
    fwht(f);
    return f;
}

WalshSpec walsh_coefficients(std::span<const double> phases) {
    if (!is_power_of_two(phases.size()))
        throw Error(Errc::invalid_argument, "Walsh transform length must be a power of two");
    WalshSpec spec;
    spec.num_qubits = static_cast<int>(std::bit_width(phases.size()) - 1);
    spec.coefficients.assign(phases.begin(), phases.end());
    fwht(spec.coefficients);
    const double norm = 1.0 / static_cast<double>(phases.size());
    for (auto &a : spec.coefficients) a *= norm;
    return spec;
}

std::vector<double> principal_phases(std::span<const std::complex<double>> values) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double a = std::arg(values[i]);
        if (a == -std::numbers::pi) a = std::numbers::pi;
        out[i] = a;
    }
    return out;
}

std::size_t dense_walsh_gate_count(int num_qubits) noexcept {
    if (num_qubits < 1) return 0;
    return (std::size_t{1} << (num_qubits + 1)) - 3;
}

void append_walsh(Circuit &circuit, const WalshSpec &spec, std::span<const int> targets,
                  const WalshOptions &options) {
    const int q = spec.num_qubits;
    if (static_cast<int>(targets.size()) != q)
        throw Error(Errc::invalid_argument, "target count does not match the Walsh register");
    if (spec.coefficients.size() != (std::size_t{1} << q))
        throw Error(Errc::invalid_argument, "Walsh coefficient count must be 2^q");

    auto keep = [&](std::size_t j) {
        return options.dense || std::abs(spec.coefficients[j]) >= options.skip_threshold;
    };
    // Bit b of the index lives on targets[q - 1 - b].
    auto qubit_of_bit = [&](int b) { return targets[static_cast<std::size_t>(q - 1 - b)]; };

    if (keep(0)) circuit.add(Gate::global_phase(spec.coefficients[0]));

    // Terms are grouped by their most significant set bit m, which becomes
    // the parity target. The lower m bits are visited in Gray-code order so
    // consecutive terms differ by a single CNOT; the pattern currently folded
    // into the target is tracked and diffed lazily, which also covers sparse
    // emission.
    for (int m = 0; m < q; ++m) {
        const int target = qubit_of_bit(m);
        const std::size_t group = std::size_t{1} << m;
        std::size_t folded = 0;
        auto fold_to = [&](std::size_t pattern) {
            std::size_t diff = folded ^ pattern;
            while (diff) {
                const int b = std::countr_zero(diff);
                circuit.add(Gate::cnot(qubit_of_bit(b), target));
                diff &= diff - 1;
            }
            folded = pattern;
        };
        for (std::size_t i = 0; i < group; ++i) {
            const std::size_t pattern = options.ordering == WalshOrdering::gray_code ? (i ^ (i >> 1)) : i;
            const std::size_t j = group | pattern;
            if (!keep(j)) continue;
            fold_to(pattern);
            // exp(i a Z) = RZ(-2a)
            circuit.add(Gate::rz(target, -2.0 * spec.coefficients[j]));
            if (options.ordering == WalshOrdering::naive) fold_to(0);
        }
        fold_to(0);
    }
}

Circuit walsh_circuit(const WalshSpec &spec, std::span<const int> targets, int n_qubits,
                      const WalshOptions &options) {
    Circuit c(n_qubits);
    append_walsh(c, spec, targets, options);
    return c;
}

void append_diagonal(Circuit &circuit, const DiagonalOp &op, std::span<const int> targets, int ancilla,
                     const WalshOptions &options) {
    if (static_cast<int>(targets.size()) != op.num_qubits())
        throw Error(Errc::invalid_argument, "target count does not match the diagonal size");
    if (std::find(targets.begin(), targets.end(), ancilla) != targets.end())
        throw Error(Errc::invalid_argument, "ancilla must not be one of the targets");

    const auto dilated = dilate(op);
    const auto spec = walsh_coefficients(principal_phases(dilated));
    std::vector<int> register_order;
    register_order.reserve(targets.size() + 1);
    register_order.push_back(ancilla);
    register_order.insert(register_order.end(), targets.begin(), targets.end());

    circuit.add(Gate::h(ancilla));
    append_walsh(circuit, spec, register_order, options);
    circuit.add(Gate::h(ancilla));
}

Circuit synthesize_diagonal(const DiagonalOp &op, std::span<const int> targets, int ancilla, int n_qubits,
                            const WalshOptions &options) {
    Circuit c(n_qubits);
    append_diagonal(c, op, targets, ancilla, options);
    return c;
}

}  // namespace pathq
