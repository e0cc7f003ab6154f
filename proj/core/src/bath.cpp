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

#include "pathq/bath.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "pathq/error.hpp"
#include "pathq/format.hpp"

namespace pathq {

namespace {

using std::numbers::pi;

// Every coefficient has the shape
//
//   P * Int_{-inf}^{inf} dw J(w)/w^2 * (coth(beta w / 2) + 1) * T(w)
//
// with J odd. Folding w -> -w leaves
//
//   P * Int_0^inf dw J(w)/w^2 * [coth(beta w / 2) (T(w) + T(-w)) + (T(w) - T(-w))].
//
// Two families of T occur: A(w) exp(-i w tau) with A even ("phase"), and
// 1 - exp(-i w delta) ("self"). Both sums reduce to real closed forms below.
struct Integrand {
    enum class Form { phase, self };

    Form form;
    double prefactor;
    double delay = 0.0;  // tau for phase, delta for self
    double dt = 0.0;
    bool quarter_half = false;  // phase amplitude sin(w dt/4) sin(w dt/2)
    bool quarter_sq = false;    // phase amplitude sin^2(w dt/4); otherwise sin^2(w dt/2)

    double amplitude(double w) const {
        if (quarter_half) return std::sin(0.25 * w * dt) * std::sin(0.5 * w * dt);
        const double s = quarter_sq ? std::sin(0.25 * w * dt) : std::sin(0.5 * w * dt);
        return s * s;
    }

    // Returns {Re, Im} of the folded integrand for xi = 1.
    std::pair<double, double> operator()(double w, double omega_c, double beta) const {
        const double j_over_w2 = 0.5 * pi * std::exp(-w / omega_c) / w;
        const double coth = 1.0 / std::tanh(0.5 * beta * w);
        double even = 0.0;
        double odd = 0.0;
        if (form == Form::phase) {
            const double a = amplitude(w);
            even = 2.0 * a * std::cos(w * delay);
            odd = -2.0 * a * std::sin(w * delay);
        } else {
            const double s = std::sin(0.5 * w * delay);
            even = 4.0 * s * s;
            odd = 2.0 * std::sin(w * delay);
        }
        return {prefactor * j_over_w2 * coth * even, prefactor * j_over_w2 * odd};
    }
};

Integrand make_integrand(CoefficientKind kind, double dt, int n_steps, int later, int earlier) {
    const double two_over_pi = 2.0 / pi;
    const double one_over_two_pi = 1.0 / (2.0 * pi);
    Integrand f{Integrand::Form::phase, two_over_pi};
    f.dt = dt;
    switch (kind) {
        case CoefficientKind::interior:
            f.delay = dt * (later - earlier);
            break;
        case CoefficientKind::end_to_end:
            f.quarter_sq = true;
            f.delay = n_steps * dt - 0.5 * dt;
            break;
        case CoefficientKind::from_start:
            f.quarter_half = true;
            f.delay = later * dt - 0.25 * dt;
            break;
        case CoefficientKind::to_end:
            f.quarter_half = true;
            f.delay = (n_steps - earlier) * dt - 0.25 * dt;
            break;
        case CoefficientKind::self_interior:
            f.form = Integrand::Form::self;
            f.prefactor = one_over_two_pi;
            f.delay = dt;
            break;
        case CoefficientKind::self_endpoint:
            f.form = Integrand::Form::self;
            f.prefactor = one_over_two_pi;
            f.delay = 0.5 * dt;
            break;
    }
    return f;
}

double integrate_part(const auto &part, double upper, const QuadratureOptions &options, const char *which) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        gauss_kronrod<double, 31>::integrate(part, 0.0, upper, options.max_depth, options.tolerance, &error, &l1);
    const double allowed = options.tolerance * std::max(1.0, l1);
    if (!std::isfinite(value) || !(error <= allowed)) {
        std::ostringstream msg;
        msg << "quadrature of the " << which << " part did not converge: estimated error "
            << format_double(error) << " > " << format_double(allowed);
        throw Error(Errc::quadrature_failed, msg.str());
    }
    return value;
}

void validate_window(double dt, int n_steps, int memory) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::invalid_argument, "dt must be positive");
    if (n_steps < 1) throw Error(Errc::invalid_argument, "n_steps must be >= 1");
    if (memory < 1 || memory > n_steps)
        throw Error(Errc::invalid_argument, "memory must satisfy 1 <= memory <= n_steps");
}

}  // namespace

void OhmicBath::validate() const {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw Error(Errc::invalid_argument, "xi must be >= 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw Error(Errc::invalid_argument, "omega_c must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(Errc::invalid_argument, "beta must be > 0");
}

double spectral_density(double omega, const OhmicBath &bath) {
    const double magnitude = 0.5 * pi * bath.xi * std::abs(omega) * std::exp(-std::abs(omega) / bath.omega_c);
    return omega < 0.0 ? -magnitude : magnitude;
}

CoefficientKind classify_coefficient(int later, int earlier, int n_steps) {
    if (later == earlier) {
        return (later == 0 || later == n_steps) ? CoefficientKind::self_endpoint : CoefficientKind::self_interior;
    }
    if (earlier == 0 && later == n_steps) return CoefficientKind::end_to_end;
    if (earlier == 0) return CoefficientKind::from_start;
    if (later == n_steps) return CoefficientKind::to_end;
    return CoefficientKind::interior;
}

CoeffTable::CoeffTable(int n_steps, double dt, int memory, std::vector<std::complex<double>> entries)
    : n_steps_(n_steps), dt_(dt), memory_(memory), entries_(std::move(entries)) {
    validate_window(dt, n_steps, memory);
    const auto expected = static_cast<std::size_t>(n_steps + 1) * static_cast<std::size_t>(memory + 1);
    if (entries_.size() != expected) throw Error(Errc::inconsistent_table, "coefficient table has the wrong size");
    for (const auto &z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(Errc::inconsistent_table, "coefficient table contains a non-finite entry");
    }
}

bool CoeffTable::in_window(int later, int earlier) const noexcept {
    return earlier >= 0 && earlier <= later && later <= n_steps_ && later - earlier <= memory_;
}

std::size_t CoeffTable::slot(int later, int earlier) const noexcept {
    return static_cast<std::size_t>(later) * static_cast<std::size_t>(memory_ + 1) +
           static_cast<std::size_t>(later - earlier);
}

std::complex<double> CoeffTable::operator()(int later, int earlier) const noexcept {
    if (!in_window(later, earlier)) return {0.0, 0.0};
    return entries_[slot(later, earlier)];
}

CoeffTable CoeffTable::with_entry(int later, int earlier, std::complex<double> value) const {
    if (!in_window(later, earlier)) throw Error(Errc::invalid_argument, "pair outside the coefficient window");
    auto copy = entries_;
    copy[slot(later, earlier)] = value;
    return CoeffTable(n_steps_, dt_, memory_, std::move(copy));
}

std::complex<double> influence_coefficient(const OhmicBath &bath, double dt, int n_steps, int later, int earlier,
                                           const QuadratureOptions &options) {
    bath.validate();
    if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "dt must be positive");
    if (earlier < 0 || earlier > later || later > n_steps)
        throw Error(Errc::invalid_argument, "coefficient indices must satisfy 0 <= k <= k' <= N");
    if (bath.xi == 0.0) return {0.0, 0.0};

    const auto f = make_integrand(classify_coefficient(later, earlier, n_steps), dt, n_steps, later, earlier);
    const double upper = options.cutoff_multiple * bath.omega_c;
    const double re = integrate_part([&](double w) { return f(w, bath.omega_c, bath.beta).first; }, upper, options,
                                     "real");
    const double im = integrate_part([&](double w) { return f(w, bath.omega_c, bath.beta).second; }, upper,
                                     options, "imaginary");
    // The integrand is linear in J, so the unit-xi result scales exactly.
    return {bath.xi * re, bath.xi * im};
}

CoeffTable influence_coefficients(const OhmicBath &bath, double dt, int n_steps, int memory,
                                  const QuadratureOptions &options) {
    bath.validate();
    validate_window(dt, n_steps, memory);

    std::vector<std::complex<double>> entries(static_cast<std::size_t>(n_steps + 1) *
                                              static_cast<std::size_t>(memory + 1));
    // Interior entries depend on k' - k only; evaluating each distance once
    // makes equal-distance entries bitwise identical.
    std::map<std::pair<CoefficientKind, int>, std::complex<double>> interior;
    for (int later = 0; later <= n_steps; ++later) {
        for (int d = 0; d <= std::min(memory, later); ++d) {
            const int earlier = later - d;
            const auto kind = classify_coefficient(later, earlier, n_steps);
            std::complex<double> value;
            if (kind == CoefficientKind::interior || kind == CoefficientKind::self_interior) {
                const auto key = std::make_pair(kind, d);
                auto it = interior.find(key);
                if (it == interior.end())
                    it = interior.emplace(key, influence_coefficient(bath, dt, n_steps, later, earlier, options)).first;
                value = it->second;
            } else if (kind == CoefficientKind::self_endpoint && later == n_steps && n_steps > 0) {
                value = entries[0];  // alpha(N, N) = alpha(0, 0)
            } else {
                value = influence_coefficient(bath, dt, n_steps, later, earlier, options);
            }
            entries[static_cast<std::size_t>(later) * static_cast<std::size_t>(memory + 1) +
                    static_cast<std::size_t>(d)] = value;
        }
    }
    return CoeffTable(n_steps, dt, memory, std::move(entries));
}

void write_coefficients_csv(std::ostream &out, const CoeffTable &table) {
    out << "kp,k,re,im\n";
    for (int later = 0; later <= table.n_steps(); ++later) {
        for (int earlier = std::max(0, later - table.memory()); earlier <= later; ++earlier) {
            const auto a = table(later, earlier);
            out << later << ',' << earlier << ',' << format_double(a.real()) << ',' << format_double(a.imag())
                << '\n';
        }
    }
}

}  // namespace pathq
