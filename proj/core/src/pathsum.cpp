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

#include "pathq/pathsum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <set>

#include "pathq/error.hpp"
#include "pathq/format.hpp"

namespace pathq {

namespace {

using cd = std::complex<double>;

int ceil_log2(int n) { return static_cast<int>(std::bit_width(static_cast<unsigned>(n - 1))); }

// Flattened 4-index table over (a, b, c, d) with a, b, c, d < n.
struct Quad {
    int n = 0;
    std::vector<cd> v;

    Quad(int levels) : n(levels), v(static_cast<std::size_t>(levels * levels * levels * levels)) {}
    cd &at(int a, int b, int c, int d) { return v[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)]; }
    cd at(int a, int b, int c, int d) const { return v[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)]; }
};

}  // namespace

void SpinBosonModel::validate() const {
    if (dvr_values.size() < 2) throw Error(Errc::invalid_argument, "model needs at least two DVR levels");
    if (std::set<double>(dvr_values.begin(), dvr_values.end()).size() != dvr_values.size())
        throw Error(Errc::invalid_argument, "DVR values must be distinct");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::invalid_argument, "dt must be positive");
    if (!std::isfinite(omega_rabi)) throw Error(Errc::invalid_argument, "omega_rabi must be finite");
    bath.validate();
}

Eigen::MatrixXd SpinBosonModel::system_hamiltonian() const {
    const int n = n_levels();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) = -omega_rabi;
        h(i + 1, i) = -omega_rabi;
    }
    return h;
}

Eigen::MatrixXcd bare_propagator(const SpinBosonModel &model) {
    model.validate();
    const int n = model.n_levels();
    if (n == 2) {
        // exp(i W dt sigma_x) = cos(W dt) I + i sin(W dt) sigma_x
        const double c = std::cos(model.omega_rabi * model.dt);
        const double s = std::sin(model.omega_rabi * model.dt);
        Eigen::MatrixXcd u(2, 2);
        u << cd(c, 0.0), cd(0.0, s), cd(0.0, s), cd(c, 0.0);
        return u;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.system_hamiltonian());
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) phases(i) = std::exp(cd(0.0, -eig.eigenvalues()(i) * model.dt));
    const Eigen::MatrixXcd v = eig.eigenvectors().cast<cd>();
    return v * phases.asDiagonal() * v.adjoint();
}

std::complex<double> influence_factor(int later, int earlier, double s_later_plus, double s_later_minus,
                                      double s_earlier_plus, double s_earlier_minus, const CoeffTable &table) {
    const double diff = s_later_plus - s_later_minus;
    if (diff == 0.0) return {1.0, 0.0};
    const cd a = table(later, earlier);
    return std::exp(-diff * (a * s_earlier_plus - std::conj(a) * s_earlier_minus));
}

std::complex<double> path_amplitude(const SystemPath &path, const SpinBosonModel &model, const CoeffTable &table,
                                    int initial_plus, int initial_minus) {
    const auto len = path.forward.size();
    if (len == 0 || path.backward.size() != len)
        throw Error(Errc::invalid_argument, "forward and backward paths must have equal nonzero length");
    const int n = model.n_levels();
    for (std::size_t i = 0; i < len; ++i) {
        if (path.forward[i] < 0 || path.forward[i] >= n || path.backward[i] < 0 || path.backward[i] >= n)
            throw Error(Errc::invalid_argument, "path level index out of range");
    }
    if (path.forward[0] != initial_plus || path.backward[0] != initial_minus) return {0.0, 0.0};

    const int n_steps = static_cast<int>(len) - 1;
    const Eigen::MatrixXcd u = bare_propagator(model);
    const auto &s = model.dvr_values;

    cd amp{1.0, 0.0};
    for (int k = 0; k < n_steps; ++k) {
        amp *= u(path.forward[k + 1], path.forward[k]) * std::conj(u(path.backward[k + 1], path.backward[k]));
    }
    for (int later = 0; later <= n_steps; ++later) {
        for (int earlier = std::max(0, later - table.memory()); earlier <= later; ++earlier) {
            amp *= influence_factor(later, earlier, s[path.forward[later]], s[path.backward[later]],
                                    s[path.forward[earlier]], s[path.backward[earlier]], table);
        }
    }
    return amp;
}

double ReducedDensityMatrix::hermiticity_error() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

ReducedDensityMatrix rdm_pathsum(const SpinBosonModel &model, const CoeffTable &table, int n_steps, int initial,
                                 const PathSumOptions &options) {
    model.validate();
    const int n = model.n_levels();
    if (initial < 0 || initial >= n) throw Error(Errc::invalid_argument, "initial state index out of range");
    if (n_steps < 0) throw Error(Errc::invalid_argument, "n_steps must be >= 0");

    ReducedDensityMatrix rdm{Eigen::MatrixXcd::Zero(n, n)};
    if (n_steps == 0) {
        rdm.entries(initial, initial) = 1.0;
        return rdm;
    }
    if (table.n_steps() != n_steps)
        throw Error(Errc::inconsistent_table, "coefficient table was built for a different number of steps");
    if (n_steps * ceil_log2(n) > options.max_path_bits)
        throw Error(Errc::budget_exceeded, "path enumeration exceeds the configured budget (N * log2 n = " +
                                               std::to_string(n_steps * ceil_log2(n)) + " > " +
                                               std::to_string(options.max_path_bits) + ")");

    const Eigen::MatrixXcd u = bare_propagator(model);
    const auto &s = model.dvr_values;

    // Per-step propagator weight K(next+, next-, cur+, cur-).
    Quad prop(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) prop.at(a, b, c, d) = u(a, c) * std::conj(u(b, d));

    // Influence factors for each (later, earlier) pair in the window,
    // indexed (later+, later-, earlier+, earlier-).
    struct PairFactor {
        int later;
        int earlier;
        Quad f;
    };
    std::vector<PairFactor> pairs;
    for (int later = 0; later <= n_steps; ++later) {
        for (int earlier = std::max(0, later - table.memory()); earlier <= later; ++earlier) {
            PairFactor pf{later, earlier, Quad(n)};
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        for (int d = 0; d < n; ++d)
                            pf.f.at(a, b, c, d) = influence_factor(later, earlier, s[a], s[b], s[c], s[d], table);
            pairs.push_back(std::move(pf));
        }
    }

    // Interior digits ordered (s_1+, ..., s_{N-1}+, s_1-, ..., s_{N-1}-), first most significant.
    const int interior = n_steps - 1;
    std::vector<int> fwd(static_cast<std::size_t>(n_steps + 1), 0);
    std::vector<int> bwd(static_cast<std::size_t>(n_steps + 1), 0);
    fwd[0] = initial;
    bwd[0] = initial;
    std::size_t n_paths = 1;
    for (int i = 0; i < 2 * interior; ++i) n_paths *= static_cast<std::size_t>(n);

    for (int end_plus = 0; end_plus < n; ++end_plus) {
        for (int end_minus = 0; end_minus < n; ++end_minus) {
            fwd[static_cast<std::size_t>(n_steps)] = end_plus;
            bwd[static_cast<std::size_t>(n_steps)] = end_minus;
            cd total{0.0, 0.0};
            for (std::size_t p = 0; p < n_paths; ++p) {
                std::size_t rest = p;
                for (int i = interior; i >= 1; --i) {
                    bwd[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
                    rest /= static_cast<std::size_t>(n);
                }
                for (int i = interior; i >= 1; --i) {
                    fwd[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
                    rest /= static_cast<std::size_t>(n);
                }
                cd amp{1.0, 0.0};
                for (int k = 0; k < n_steps; ++k) {
                    const auto k0 = static_cast<std::size_t>(k);
                    amp *= prop.at(fwd[k0 + 1], bwd[k0 + 1], fwd[k0], bwd[k0]);
                }
                for (const auto &pf : pairs) {
                    const auto l = static_cast<std::size_t>(pf.later);
                    const auto e = static_cast<std::size_t>(pf.earlier);
                    amp *= pf.f.at(fwd[l], bwd[l], fwd[e], bwd[e]);
                }
                total += amp;
            }
            rdm.entries(end_plus, end_minus) = total;
        }
    }
    return rdm;
}

std::vector<ReducedDensityMatrix> rdm_trajectory(const SpinBosonModel &model, int max_steps, int memory,
                                                 int initial, const TrajectoryOptions &options) {
    model.validate();
    if (max_steps < 0) throw Error(Errc::invalid_argument, "max_steps must be >= 0");
    std::vector<ReducedDensityMatrix> out;
    out.reserve(static_cast<std::size_t>(max_steps + 1));
    for (int step = 0; step <= max_steps; ++step) {
        if (step == 0) {
            out.push_back(rdm_pathsum(model, CoeffTable(1, model.dt, 1, std::vector<cd>(4)), 0, initial,
                                      options.pathsum));
            continue;
        }
        const int window = memory <= 0 ? step : std::min(memory, step);
        const auto table = influence_coefficients(model.bath, model.dt, step, window, options.quadrature);
        out.push_back(rdm_pathsum(model, table, step, initial, options.pathsum));
    }
    return out;
}

void write_trajectory_csv(std::ostream &out, double dt, const std::vector<ReducedDensityMatrix> &trajectory) {
    const int n = trajectory.empty() ? 2 : static_cast<int>(trajectory.front().entries.rows());
    out << "# pathq path-sum trajectory dt=" << format_double(dt) << '\n';
    out << 't';
    for (int i = 0; i < n; ++i) out << ",p_" << i;
    out << ",re_rho01,im_rho01\n";
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const auto &rho = trajectory[k].entries;
        out << format_double(static_cast<double>(k) * dt);
        for (int i = 0; i < n; ++i) out << ',' << format_double(rho(i, i).real());
        out << ',' << format_double(rho(0, 1).real()) << ',' << format_double(rho(0, 1).imag()) << '\n';
    }
}

}  // namespace pathq
