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

// Reference computations for tests. None of these call into the library's
// numerical kernels; they share only the public data types.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "pathq/bath.hpp"
#include "pathq/pathsum.hpp"

namespace pathq::testing {

using cd = std::complex<double>;

/// Influence coefficient straight from its full-line definition
///
///   P * Int dw J(w)/w^2 * 2 / (1 - exp(-beta w)) * T(w),
///
/// J extended as an odd function, evaluated with a midpoint rule on a grid
/// symmetric about w = 0 (so the principal-value pole cancels pairwise) and
/// one Richardson step. `later`/`earlier` follow the table convention.
inline cd alpha_oracle(const OhmicBath &bath, double dt, int n_steps, int later, int earlier,
                       double half_width_cutoffs = 100.0, int cells_per_unit = 400) {
    using std::numbers::pi;
    const int kp = later;
    const int k = earlier;
    const int N = n_steps;
    const double t = N * dt;

    // T(w) and prefactor per coefficient; endpoint forms take precedence over
    // the generic interior ones.
    double pref = 2.0 / pi;
    auto transfer = [&](double w) -> cd {
        const cd I{0.0, 1.0};
        if (kp == k) {
            const double delta = (k == 0 || k == N) ? dt / 2 : dt;
            return 1.0 - std::exp(-I * w * delta);
        }
        if (kp == N && k == 0) {
            const double s = std::sin(w * dt / 4);
            return s * s * std::exp(-I * w * (t - dt / 2));
        }
        if (k == 0) return std::sin(w * dt / 4) * std::sin(w * dt / 2) * std::exp(-I * w * (kp * dt - dt / 4));
        if (kp == N) return std::sin(w * dt / 4) * std::sin(w * dt / 2) * std::exp(-I * w * (t - k * dt - dt / 4));
        const double s = std::sin(w * dt / 2);
        return s * s * std::exp(-I * w * dt * static_cast<double>(kp - k));
    };
    if (kp == k) pref = 1.0 / (2.0 * pi);

    auto f = [&](double w) -> cd {
        const double j = 0.5 * pi * bath.xi * w * std::exp(-std::abs(w) / bath.omega_c);
        const double thermal = 2.0 / (1.0 - std::exp(-bath.beta * w));
        return j / (w * w) * thermal * transfer(w);
    };
    const double W = half_width_cutoffs * bath.omega_c;
    auto midpoint = [&](long cells_per_side) {
        const double h = W / static_cast<double>(cells_per_side);
        cd sum{};
        for (long i = 0; i < cells_per_side; ++i) {
            const double w = (static_cast<double>(i) + 0.5) * h;
            sum += f(w) + f(-w);
        }
        return sum * h;
    };
    const long cells = static_cast<long>(W * cells_per_unit);
    const cd coarse = midpoint(cells);
    const cd fine = midpoint(2 * cells);
    return pref * (4.0 * fine - coarse) / 3.0;
}

/// exp(-i H dt) for the nearest-neighbour chain H = -Omega sum |i><i+1| + h.c.
inline Eigen::MatrixXcd chain_propagator(double omega, int n, double dt) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) h(i, i + 1) = h(i + 1, i) = -omega;
    return (cd{0.0, -dt} * h).exp();
}

/// Reduced density matrix by brute-force enumeration of every forward and
/// backward path, weighting each with the exponential of the full double sum
/// over the memory window.
inline Eigen::MatrixXcd naive_rdm(const SpinBosonModel &m, const CoeffTable &table, int N, int initial) {
    const int n = m.n_levels();
    const Eigen::MatrixXcd u = chain_propagator(m.omega_rabi, n, m.dt);
    const auto &s = m.dvr_values;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    std::vector<int> fp(static_cast<std::size_t>(N + 1));
    std::vector<int> bp(static_cast<std::size_t>(N + 1));
    std::uint64_t total = 1;
    for (int i = 0; i < 2 * N; ++i) total *= static_cast<std::uint64_t>(n);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        fp[0] = bp[0] = initial;
        for (int k = 1; k <= N; ++k) {
            fp[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
            rest /= static_cast<std::uint64_t>(n);
            bp[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
            rest /= static_cast<std::uint64_t>(n);
        }
        cd amp{1.0, 0.0};
        for (int k = 0; k < N; ++k) amp *= u(fp[k + 1], fp[k]) * std::conj(u(bp[k + 1], bp[k]));
        cd exponent{};
        for (int k = 0; k <= N; ++k) {
            for (int kp = 0; kp <= k; ++kp) {
                const cd a = table(k, kp);
                exponent -= (s[fp[k]] - s[bp[k]]) * (a * s[fp[kp]] - std::conj(a) * s[bp[kp]]);
            }
        }
        rho(fp[N], bp[N]) += amp * std::exp(exponent);
    }
    return rho;
}

}  // namespace pathq::testing
