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

// Harmonic bath with an Ohmic spectral density and the discretized
// influence-functional coefficients alpha(k', k) it induces.
//
// Units: hbar = 1. Frequencies are in units of the system coupling, times
// (dt, beta) in inverse units.

#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace pathq {

struct OhmicBath {
    double xi = 0.0;       // dimensionless Kondo parameter
    double omega_c = 1.0;  // cutoff frequency
    double beta = 1.0;     // inverse temperature

    /// Throws Error(invalid_argument) unless xi >= 0, omega_c > 0, beta > 0.
    void validate() const;
};

/// J(w) = (pi/2) xi w exp(-|w|/omega_c), extended to w < 0 as an odd function.
double spectral_density(double omega, const OhmicBath &bath);

/// Which closed form governs alpha(later, earlier) for a window ending at n_steps.
enum class CoefficientKind {
    interior,       // 0 < k < k' < N, depends on k' - k only
    self_interior,  // k = k', 0 < k < N
    end_to_end,     // (N, 0)
    self_endpoint,  // (0, 0) and (N, N)
    from_start,     // (k', 0), 0 < k' < N
    to_end,         // (N, k), 0 < k < N
};

CoefficientKind classify_coefficient(int later, int earlier, int n_steps);

struct QuadratureOptions {
    /// Upper integration limit in units of omega_c.
    double cutoff_multiple = 50.0;
    /// Relative tolerance, also applied as an absolute floor.
    double tolerance = 1e-10;
    unsigned max_depth = 20;
};

/// alpha(later, earlier) for 0 <= earlier <= later <= n_steps with
/// later - earlier <= memory. Lookups outside the window return exactly 0.
class CoeffTable {
  public:
    /// `entries` is indexed by later * (memory + 1) + (later - earlier); slots
    /// with later - earlier > later are ignored.
    CoeffTable(int n_steps, double dt, int memory, std::vector<std::complex<double>> entries);

    int n_steps() const noexcept { return n_steps_; }
    double dt() const noexcept { return dt_; }
    int memory() const noexcept { return memory_; }

    bool in_window(int later, int earlier) const noexcept;
    std::complex<double> operator()(int later, int earlier) const noexcept;

    /// Copy with one entry replaced; the pair must lie inside the window.
    CoeffTable with_entry(int later, int earlier, std::complex<double> value) const;

  private:
    std::size_t slot(int later, int earlier) const noexcept;

    int n_steps_;
    double dt_;
    int memory_;
    std::vector<std::complex<double>> entries_;
};

/// Evaluates a single coefficient by adaptive Gauss-Kronrod quadrature of the
/// even part of the integrand on [0, cutoff_multiple * omega_c].
std::complex<double> influence_coefficient(const OhmicBath &bath, double dt, int n_steps, int later,
                                           int earlier, const QuadratureOptions &options = {});

CoeffTable influence_coefficients(const OhmicBath &bath, double dt, int n_steps, int memory,
                                  const QuadratureOptions &options = {});

/// CSV with header `kp,k,re,im`, one row per stored pair, later index major.
void write_coefficients_csv(std::ostream &out, const CoeffTable &table);

}  // namespace pathq
