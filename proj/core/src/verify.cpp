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

#include "pathq/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "pathq/algorithms.hpp"
#include "pathq/format.hpp"
#include "pathq/synthesis.hpp"

namespace pathq {

namespace {

using cd = std::complex<double>;

const cd kCorruption{0.1, 0.05};

struct Measured {
    double value = 0.0;
    std::string detail;
};

// Runs `body`; any exception becomes a failed entry.
VerifyCheck run_check(std::string name, double threshold, const std::function<Measured()> &body) {
    VerifyCheck check{std::move(name), false, 0.0, threshold, {}};
    try {
        auto m = body();
        check.measured = m.value;
        check.detail = std::move(m.detail);
        check.passed = std::isfinite(m.value) && m.value <= threshold;
    } catch (const std::exception &e) {
        check.measured = std::numeric_limits<double>::infinity();
        check.detail = e.what();
    }
    return check;
}

CoeffTable circuit_table(const VerifyOptions &o, int steps, int memory) {
    auto table = influence_coefficients(o.model.bath, o.model.dt, steps, memory);
    if (o.corrupt_coefficient) table = table.with_entry(1, 0, table(1, 0) + kCorruption);
    return table;
}

Measured quadrature_refinement(const VerifyOptions &o) {
    const int steps = o.max_steps;
    const auto base = influence_coefficients(o.model.bath, o.model.dt, steps, steps);
    const QuadratureOptions fine{.cutoff_multiple = 100.0, .tolerance = 1e-12, .max_depth = 25};
    const auto ref = influence_coefficients(o.model.bath, o.model.dt, steps, steps, fine);
    double worst = 0.0;
    for (int later = 0; later <= steps; ++later) {
        for (int earlier = 0; earlier <= later; ++earlier) {
            const double scale = std::max(std::abs(ref(later, earlier)), 1e-300);
            worst = std::max(worst, std::abs(base(later, earlier) - ref(later, earlier)) / scale);
        }
    }
    return {worst, "max relative change with cutoff 100 omega_c and tolerance 1e-12"};
}

// Every factor of every full path recomputed from a freshly evaluated table
// and compared with the product of compact-operator entries.
Measured factor_product(const VerifyOptions &o) {
    const auto &m = o.model;
    const int n = m.n_levels();
    const int bits = std::countr_zero(static_cast<unsigned>(n));
    const auto &s = m.dvr_values;
    const Eigen::MatrixXcd u = bare_propagator(m);
    double worst = 0.0;
    for (int steps = 1; steps <= o.max_steps; ++steps) {
        for (int memory : {steps, std::min(2, steps)}) {
            const auto fresh = influence_coefficients(m.bath, m.dt, steps, memory);
            const auto ops = combine(m, circuit_table(o, steps, memory), steps, memory);
            const int points = steps + 1;
            const std::uint64_t paths = std::uint64_t{1} << (2 * points * bits);
            std::vector<int> fwd(static_cast<std::size_t>(points));
            std::vector<int> bwd(static_cast<std::size_t>(points));
            for (std::uint64_t code = 0; code < paths; ++code) {
                std::uint64_t rest = code;
                for (int k = 0; k < points; ++k) {
                    fwd[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<unsigned>(n));
                    rest /= static_cast<unsigned>(n);
                    bwd[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<unsigned>(n));
                    rest /= static_cast<unsigned>(n);
                }
                cd expected{1.0, 0.0};
                for (int k = 0; k < steps; ++k)
                    expected *= u(fwd[k + 1], fwd[k]) * std::conj(u(bwd[k + 1], bwd[k]));
                for (int later = 0; later <= steps; ++later)
                    for (int earlier = std::max(0, later - memory); earlier <= later; ++earlier)
                        expected *= influence_factor(later, earlier, s[fwd[later]], s[bwd[later]], s[fwd[earlier]],
                                                     s[bwd[earlier]], fresh);
                cd got{1.0, 0.0};
                for (const auto &op : ops) {
                    const auto idx = static_cast<std::size_t>(
                        ((fwd[op.later] * n + bwd[op.later]) * n + fwd[op.earlier]) * n + bwd[op.earlier]);
                    got *= op.diagonal.entries[idx] * op.diagonal.scale;
                }
                worst = std::max(worst, std::abs(got - expected) / std::max(std::abs(expected), 1e-300));
            }
        }
    }
    return {worst, "max relative error over every full path, L in {N, 2}"};
}

Measured dilation_block(const VerifyOptions &o) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    const int targets[] = {1, 2};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cd> raw(4);
        for (std::size_t j = 0; j < raw.size(); ++j)
            raw[j] = (trial + static_cast<int>(j)) % 5 == 0 ? cd{} : std::polar(radius(rng), angle(rng));
        const auto op = DiagonalOp::from_entries(raw);
        const auto u = unitary_of(synthesize_diagonal(op, targets, 0, 3));
        for (int j = 0; j < 4; ++j) {
            worst = std::max(worst, std::abs(u(j, j) - op.entries[static_cast<std::size_t>(j)]));
            for (int i = 0; i < 4; ++i)
                if (i != j) worst = std::max(worst, std::abs(u(i, j)));
        }
    }
    return {worst, "ancilla-0 block of 50 random two-qubit diagonals with zeros"};
}

Measured walsh_reconstruction(const VerifyOptions &o) {
    std::mt19937_64 rng(o.seed + 1);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (int q = 1; q <= 5; ++q) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> phases(std::size_t{1} << q);
            for (auto &p : phases) p = angle(rng);
            std::vector<int> targets(static_cast<std::size_t>(q));
            for (int i = 0; i < q; ++i) targets[static_cast<std::size_t>(i)] = i;
            const auto u = unitary_of(walsh_circuit(walsh_coefficients(phases), targets, q, {.dense = true}));
            for (std::size_t j = 0; j < phases.size(); ++j) {
                const auto jj = static_cast<Eigen::Index>(j);
                worst = std::max(worst, std::abs(u(jj, jj) - std::polar(1.0, phases[j])));
            }
            worst = std::max(worst, (u - Eigen::MatrixXcd(u.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
        }
    }
    return {worst, "max elementwise error, q = 1..5"};
}

Measured gate_counts() {
    double mismatches = 0.0;
    std::string detail;
    for (int q = 1; q <= 6; ++q) {
        std::vector<double> phases(std::size_t{1} << q, 0.0);
        std::vector<int> targets(static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i) targets[static_cast<std::size_t>(i)] = i;
        const auto c = walsh_circuit(walsh_coefficients(phases), targets, q, {.dense = true});
        const auto native = c.counts().native();
        if (native != dense_walsh_gate_count(q)) mismatches += 1.0;
        if (!detail.empty()) detail += ' ';
        detail += "q=" + std::to_string(q) + ":" + std::to_string(native);
    }
    return {mismatches, "dense native gates " + detail};
}

Measured pathsum_invariants(const VerifyOptions &o) {
    double worst = 0.0;
    for (int steps = 1; steps <= o.max_steps; ++steps) {
        const auto table = influence_coefficients(o.model.bath, o.model.dt, steps, steps);
        const auto rho = rdm_pathsum(o.model, table, steps, 0);
        worst = std::max({worst, std::abs(rho.trace() - 1.0), rho.hermiticity_error()});
    }
    return {worst, "max of |trace - 1| and Hermiticity error"};
}

struct Equivalence {
    double error = 0.0;
    double resource_mismatches = 0.0;
};

Equivalence oracle_equivalence(const VerifyOptions &o) {
    Equivalence eq;
    for (int steps = 1; steps <= o.max_steps; ++steps) {
        for (int memory : {steps, std::min(2, steps)}) {
            const auto fresh = influence_coefficients(o.model.bath, o.model.dt, steps, memory);
            const auto rho = rdm_pathsum(o.model, fresh, steps, 0);
            for (Algorithm alg : {Algorithm::one, Algorithm::two}) {
                if (alg == Algorithm::two && steps > 2) continue;
                ExperimentPlan plan;
                plan.model = o.model;
                plan.n_steps = steps;
                plan.memory = memory;
                plan.algorithm = alg;
                const auto circuits = build_probe_circuits(plan, circuit_table(o, steps, memory));
                std::vector<double> success;
                for (const auto &c : circuits) success.push_back(exact_success_probability(c, plan.simulator));
                const auto p = estimate_populations(success);
                for (int level = 0; level < o.model.n_levels(); ++level)
                    eq.error = std::max(eq.error, std::abs(p[static_cast<std::size_t>(level)] - rho.population(level)));

                const auto expected = resource_counts(o.model.n_levels(), steps, memory, alg);
                const auto got = measure_resources(circuits.front());
                if (got.qubits != expected.qubits || got.native_gates != expected.native_gates ||
                    got.toffolis != expected.toffolis || got.compact_operators != expected.compact_operators)
                    eq.resource_mismatches += 1.0;
            }
        }
    }
    return eq;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck &c) { return c.passed; });
}

VerifyReport verify(const VerifyOptions &options) {
    VerifyReport report;
    auto &c = report.checks;
    c.push_back(run_check("quadrature_refinement", 1e-8, [&] { return quadrature_refinement(options); }));
    c.push_back(run_check("factor_product", 1e-12, [&] { return factor_product(options); }));
    c.push_back(run_check("dilation_block", 1e-10, [&] { return dilation_block(options); }));
    c.push_back(run_check("walsh_reconstruction", 1e-10, [&] { return walsh_reconstruction(options); }));
    c.push_back(run_check("gate_counts", 0.0, [] { return gate_counts(); }));
    c.push_back(run_check("pathsum_invariants", 1e-12, [&] { return pathsum_invariants(options); }));

    Equivalence eq;
    std::string failure;
    try {
        eq = oracle_equivalence(options);
    } catch (const std::exception &e) {
        failure = e.what();
    }
    c.push_back(run_check("oracle_equivalence", 1e-8, [&]() -> Measured {
        if (!failure.empty()) throw std::runtime_error(failure);
        return {eq.error, "max |circuit population - path sum|, alg I N <= max_steps, alg II N <= 2"};
    }));
    c.push_back(run_check("resource_formulas", 0.0, [&]() -> Measured {
        if (!failure.empty()) throw std::runtime_error(failure);
        return {eq.resource_mismatches, "built circuits disagreeing with the closed forms"};
    }));
    return report;
}

void write_verify_report(std::ostream &out, const VerifyReport &report) {
    for (const auto &c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << format_double(c.measured)
            << " threshold=" << format_double(c.threshold) << " (" << c.detail << ")\n";
    }
    out << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
}

}  // namespace pathq
