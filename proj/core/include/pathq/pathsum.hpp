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

// Exact reduced-density-matrix propagation by brute-force summation over all
// forward/backward system paths. This is the reference every circuit result
// is checked against.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <vector>

#include "pathq/bath.hpp"

namespace pathq {

/// System of n DVR levels with nearest-neighbour tunnelling
/// H = -omega_rabi * sum_i (|i><i+1| + |i+1><i|); for two levels this is the
/// symmetric spin-boson Hamiltonian -omega_rabi * sigma_x.
struct SpinBosonModel {
    double omega_rabi = 1.0;
    std::vector<double> dvr_values{1.0, -1.0};
    OhmicBath bath;
    double dt = 0.25;

    int n_levels() const noexcept { return static_cast<int>(dvr_values.size()); }

    /// Throws Error(invalid_argument) on fewer than two or repeated DVR values,
    /// non-positive dt, or an invalid bath.
    void validate() const;

    Eigen::MatrixXd system_hamiltonian() const;
};

/// Short-time propagator U = exp(-i H dt) in the DVR basis.
Eigen::MatrixXcd bare_propagator(const SpinBosonModel &model);

/// exp[-(s'+ - s'-)(alpha(k', k) s+ - conj(alpha(k', k)) s-)] with the primed
/// values belonging to the later time point.
std::complex<double> influence_factor(int later, int earlier, double s_later_plus, double s_later_minus,
                                      double s_earlier_plus, double s_earlier_minus, const CoeffTable &table);

/// Level indices (not DVR values) at times 0..N on each branch.
struct SystemPath {
    std::vector<int> forward;
    std::vector<int> backward;
};

/// Amplitude of a single path for rho(0) = |initial_plus><initial_minus|,
/// using the memory-truncated factorization of the influence functional.
std::complex<double> path_amplitude(const SystemPath &path, const SpinBosonModel &model, const CoeffTable &table,
                                    int initial_plus, int initial_minus);

struct ReducedDensityMatrix {
    Eigen::MatrixXcd entries;

    double population(int level) const { return entries(level, level).real(); }
    std::complex<double> trace() const { return entries.trace(); }
    /// max |rho(i, j) - conj(rho(j, i))|
    double hermiticity_error() const;
};

struct PathSumOptions {
    /// Budget on N * ceil(log2 n); the sum visits n^(2(N-1)) paths per entry.
    int max_path_bits = 8;
};

/// rho(N dt) for rho(0) = |initial><initial|. The table must have been built
/// for exactly `n_steps` steps. N = 0 returns rho(0) and ignores the table.
ReducedDensityMatrix rdm_pathsum(const SpinBosonModel &model, const CoeffTable &table, int n_steps, int initial,
                                 const PathSumOptions &options = {});

struct TrajectoryOptions {
    QuadratureOptions quadrature;
    PathSumOptions pathsum;
};

/// rho(k dt) for k = 0..max_steps. Each step gets its own coefficient table
/// with memory min(memory, k); memory <= 0 means unlimited.
std::vector<ReducedDensityMatrix> rdm_trajectory(const SpinBosonModel &model, int max_steps, int memory,
                                                 int initial, const TrajectoryOptions &options = {});

/// A `# ... dt=` comment line, then header `t,p_0,...,p_{n-1},re_rho01,im_rho01`;
/// row k has t = k * dt.
void write_trajectory_csv(std::ostream &out, double dt, const std::vector<ReducedDensityMatrix> &trajectory);

}  // namespace pathq
