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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "oracles.hpp"
#include "pathq/algorithms.hpp"
#include "pathq/experiment.hpp"
#include "pathq/format.hpp"
#include "pathq/synthesis.hpp"

namespace {

using namespace pathq;
using cd = std::complex<double>;

struct Outcome {
    bool pass = false;
    std::string summary;
};

SpinBosonModel model(const OhmicBath &bath, double dt) {
    return {.omega_rabi = 1.0, .dvr_values = {1.0, -1.0}, .bath = bath, .dt = dt};
}

const OhmicBath kFig8{.xi = 0.1, .omega_c = 7.5, .beta = 5.0};
const OhmicBath kFig9{.xi = 1.2, .omega_c = 2.5, .beta = 0.2};

std::vector<int> iota(int q, int offset = 0) {
    std::vector<int> v(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) v[static_cast<std::size_t>(i)] = i + offset;
    return v;
}

std::string fmt(double x) { return format_double(x); }

Outcome walsh_exactness() {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    bool counts_ok = true;
    for (int q = 1; q <= 5; ++q) {
        const std::size_t dim = std::size_t{1} << q;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> phases(dim);
            for (auto &p : phases) p = angle(rng);
            const auto c = walsh_circuit(walsh_coefficients(phases), iota(q), q, {.dense = true});
            if (c.counts().native() != (std::size_t{1} << (q + 1)) - 3) counts_ok = false;
            const auto u = unitary_of(c);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) {
                    const cd want = i == j ? std::polar(1.0, phases[i]) : cd{};
                    worst = std::max(worst, std::abs(u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - want));
                }
        }
    }
    return {worst <= 1e-10 && counts_ok,
            "max elementwise error " + fmt(worst) + " (tol 1e-10), dense counts 2^(q+1)-3 " +
                (counts_ok ? "exact" : "MISMATCH")};
}

Outcome dilation_identity() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> width(1, 3);
    double worst = 0.0;
    int zeros = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int q = width(rng);
        const std::size_t dim = std::size_t{1} << q;
        std::vector<cd> raw(dim);
        for (auto &z : raw) {
            if (u01(rng) < 0.2) {
                z = 0.0;
                ++zeros;
            } else {
                z = std::polar(u01(rng), angle(rng));
            }
        }
        const auto op = DiagonalOp::from_entries(raw);
        const auto u = unitary_of(synthesize_diagonal(op, iota(q, 1), 0, q + 1, {.dense = true}));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const cd want = i == j ? op.entries[j] : cd{};
                worst = std::max(worst, std::abs(u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - want));
            }
    }
    return {worst <= 1e-10, "max block error " + fmt(worst) + " (tol 1e-10), " + std::to_string(zeros) + " zero entries"};
}

Outcome pathsum_invariants() {
    double worst = 0.0;
    double rabi = 0.0;
    for (const auto &bath : {kFig8, kFig9}) {
        for (double dt : {0.1, 0.25}) {
            const auto m = model(bath, dt);
            for (int n = 1; n <= 6; ++n)
                for (int memory : {std::min(2, n), n}) {
                    const auto rho = rdm_pathsum(m, influence_coefficients(bath, dt, n, memory), n, 0);
                    worst = std::max({worst, std::abs(rho.trace() - 1.0), rho.hermiticity_error()});
                }
        }
    }
    OhmicBath free = kFig8;
    free.xi = 0.0;
    for (double dt : {0.1, 0.25}) {
        const auto m = model(free, dt);
        for (int n = 1; n <= 6; ++n) {
            const auto rho = rdm_pathsum(m, influence_coefficients(free, dt, n, n), n, 0);
            const double c = std::cos(n * dt);
            rabi = std::max(rabi, std::abs(rho.population(0) - c * c));
        }
    }
    return {worst <= 1e-12 && rabi <= 1e-12,
            "max |tr-1|, Hermiticity " + fmt(worst) + "; free-dynamics error " + fmt(rabi) + " (tol 1e-12)"};
}

Outcome quadrature_correctness() {
    double worst = 0.0;
    double drift = 0.0;
    int entries = 0;
    const int n = 6;
    for (const auto &bath : {kFig8, kFig9}) {
        for (double dt : {0.1, 0.25}) {
            const auto t = influence_coefficients(bath, dt, n, n);
            for (int kp = 0; kp <= n; ++kp)
                for (int k = 0; k <= kp; ++k) {
                    const auto want = testing::alpha_oracle(bath, dt, n, kp, k);
                    worst = std::max(worst, std::abs(t(kp, k) - want) / std::abs(want));
                    ++entries;
                }
            for (int d = 1; d < n - 1; ++d)
                for (int k = 1; k + d < n; ++k)
                    drift = std::max(drift, std::abs(t(k + d, k) - t(1 + d, 1)) / std::abs(t(1 + d, 1)));
        }
    }
    return {worst <= 1e-6 && drift <= 1e-12, std::to_string(entries) + " entries, max relative error " + fmt(worst) +
                                                 " (tol 1e-6); interior separation drift " + fmt(drift) +
                                                 " (tol 1e-12)"};
}

Outcome oracle_equivalence() {
    double worst = 0.0;
    int configs = 0;
    for (const auto &bath : {kFig8, kFig9}) {
        const auto m = model(bath, 0.25);
        for (int n = 1; n <= 4; ++n) {
            for (int memory : {std::min(2, n), n}) {
                const auto table = influence_coefficients(bath, 0.25, n, memory);
                const auto rho = rdm_pathsum(m, table, n, 0);
                for (Algorithm alg : {Algorithm::one, Algorithm::two}) {
                    if (alg == Algorithm::two && n > 2) continue;
                    ExperimentPlan plan;
                    plan.model = m;
                    plan.n_steps = n;
                    plan.memory = memory;
                    plan.algorithm = alg;
                    std::vector<double> success;
                    for (const auto &c : build_probe_circuits(plan, table))
                        success.push_back(exact_success_probability(c));
                    const auto p = estimate_populations(success);
                    worst = std::max({worst, std::abs(p[0] - rho.population(0)), std::abs(p[1] - rho.population(1))});
                    ++configs;
                }
            }
        }
    }
    return {worst <= 1e-8, std::to_string(configs) + " configurations, max population error " + fmt(worst) +
                               " (tol 1e-8)"};
}

Outcome sampling_consistency() {
    bool mean_ok = true;
    std::string means;
    double worst_slope_dev = 0.0;
    std::string slopes;
    std::uint64_t seed = 11;
    for (const auto &bath : {kFig8, kFig9}) {
        for (int n = 1; n <= 2; ++n) {
            ExperimentPlan plan;
            plan.model = model(bath, 0.25);
            plan.n_steps = n;
            plan.memory = n;
            std::vector<double> success;
            for (const auto &c : build_algorithm_I(plan)) success.push_back(exact_success_probability(c));
            const double exact = estimate_populations(success)[0];

            const auto runs = sampled_estimates(success[0], success[1], 1000000, 100, seed++, n);
            const auto [mean, sd] = mean_and_std(runs);
            const double bound = 3.0 * sd / 10.0;
            if (!(std::abs(mean - exact) <= bound)) mean_ok = false;
            char ratio[32];
            std::snprintf(ratio, sizeof ratio, " %.3f", std::abs(mean - exact) / bound);
            means += ratio;

            // RMS error over 100 runs against log10(shots), least squares.
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int pts = 0;
            for (std::uint64_t shots : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
                const auto est = sampled_estimates(success[0], success[1], shots, 100, seed++, n);
                double ms = 0.0;
                for (double e : est) ms += (e - exact) * (e - exact);
                const double x = std::log10(static_cast<double>(shots));
                const double y = std::log10(std::sqrt(ms / static_cast<double>(est.size())));
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                ++pts;
            }
            const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
            worst_slope_dev = std::max(worst_slope_dev, std::abs(slope + 0.5));
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.3f", slope);
            slopes += buf;
        }
    }
    return {mean_ok && worst_slope_dev <= 0.1,
            "|mean - exact| / (3 sd/sqrt(100)):" + means + "; slopes" + slopes + " (target -0.5 +- 0.1)"};
}

Outcome resource_formulas() {
    bool ok = true;
    int checked = 0;
    const auto m = model(kFig8, 0.25);
    for (int n = 1; n <= 4; ++n) {
        for (int memory = 1; memory <= n; ++memory) {
            const int ops = (2 * n - memory + 1) * memory / 2;
            const int q = 2 * (n + 1) * 1 + ops;
            const std::size_t native = (4 * 16 - 3) * static_cast<std::size_t>(ops);
            for (Algorithm alg : {Algorithm::one, Algorithm::two}) {
                const auto r = resource_counts(2, n, memory, alg);
                const int want_qubits = alg == Algorithm::one ? q : 2 * q - 1;
                const std::size_t want_toffoli = alg == Algorithm::one ? 0 : 2 * static_cast<std::size_t>(q - 2);
                if (r.qubits != want_qubits || r.native_gates != native || r.toffolis != want_toffoli) ok = false;
                ExperimentPlan plan;
                plan.model = m;
                plan.n_steps = n;
                plan.memory = memory;
                plan.algorithm = alg;
                const auto built = build_probe_circuits(plan, influence_coefficients(m.bath, m.dt, n, memory));
                for (const auto &b : built) {
                    const auto got = measure_resources(b);
                    if (got.qubits != want_qubits || got.native_gates != native || got.toffolis != want_toffoli)
                        ok = false;
                }
                ++checked;
            }
        }
    }
    const bool spots = resource_counts(2, 2, 2, Algorithm::one).qubits == 9 &&
                       resource_counts(2, 2, 2, Algorithm::one).native_gates == 183 &&
                       resource_counts(2, 5, 3, Algorithm::one).qubits == 24 &&
                       resource_counts(2, 2, 2, Algorithm::two).toffolis == 14;
    return {ok && spots, std::to_string(checked) + " (N, L, algorithm) cases match closed forms and built circuits; "
                                                    "spot values 9 / 183 / 24 / 14 " +
                             (spots ? "ok" : "MISMATCH")};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / ("pathq_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "preset = fig8\nschedule = 1:20000:100, 2:30000:100, 3:40000:100\nseed = 2026\n";
    }
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    std::string how;
#ifdef PATHQ_CLI_PATH
    for (const auto &out : {a, b}) {
        const std::string cmd =
            std::string("\"") + PATHQ_CLI_PATH + "\" simulate --config \"" + cfg.string() + "\" -o \"" + out.string() + "\"";
        if (std::system(cmd.c_str()) != 0) return {false, "simulate invocation failed: " + cmd};
    }
    how = "two CLI invocations";
#else
    for (const auto &out : {a, b}) {
        std::ifstream in(cfg);
        auto config = parse_config(in);
        config.output = out.string();
        run_and_export(config);
    }
    how = "two in-process runs";
#endif
    const auto x = slurp(a);
    const auto y = slurp(b);
    std::filesystem::remove_all(dir);
    return {!x.empty() && x == y, how + ", " + std::to_string(x.size()) + " bytes, " +
                                      (x == y ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "Walsh synthesis exactness", walsh_exactness},
        {2, "Dilation block identity", dilation_identity},
        {3, "Path-sum oracle invariants", pathsum_invariants},
        {4, "Quadrature correctness", quadrature_correctness},
        {5, "End-to-end oracle equivalence", oracle_equivalence},
        {6, "Sampling consistency", sampling_consistency},
        {7, "Resource formulas", resource_formulas},
        {8, "Determinism", determinism},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " [" << c.name << "]: " << o.summary
                  << " [" << timing << "]" << std::endl;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
