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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "pathq/error.hpp"

namespace pathq {
namespace {

const OhmicBath kWeak{.xi = 0.1, .omega_c = 7.5, .beta = 5.0};
const OhmicBath kStrong{.xi = 1.2, .omega_c = 2.5, .beta = 0.2};

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

TEST(SpectralDensity, OhmicForm) {
    const OhmicBath b{.xi = 0.5, .omega_c = 2.0, .beta = 1.0};
    EXPECT_DOUBLE_EQ(spectral_density(1.0, b), 0.5 * std::numbers::pi * 0.5 * std::exp(-0.5));
    EXPECT_DOUBLE_EQ(spectral_density(-1.0, b), -spectral_density(1.0, b));
    EXPECT_EQ(spectral_density(0.0, b), 0.0);
}

TEST(SpectralDensity, RejectsBadBath) {
    EXPECT_THROW((OhmicBath{.xi = -1.0, .omega_c = 1.0, .beta = 1.0}.validate()), Error);
    EXPECT_THROW((OhmicBath{.xi = 1.0, .omega_c = 0.0, .beta = 1.0}.validate()), Error);
    EXPECT_THROW((OhmicBath{.xi = 1.0, .omega_c = 1.0, .beta = 0.0}.validate()), Error);
}

TEST(Classify, EndpointFormsTakePrecedence) {
    EXPECT_EQ(classify_coefficient(0, 0, 4), CoefficientKind::self_endpoint);
    EXPECT_EQ(classify_coefficient(4, 4, 4), CoefficientKind::self_endpoint);
    EXPECT_EQ(classify_coefficient(2, 2, 4), CoefficientKind::self_interior);
    EXPECT_EQ(classify_coefficient(4, 0, 4), CoefficientKind::end_to_end);
    EXPECT_EQ(classify_coefficient(2, 0, 4), CoefficientKind::from_start);
    EXPECT_EQ(classify_coefficient(4, 1, 4), CoefficientKind::to_end);
    EXPECT_EQ(classify_coefficient(3, 1, 4), CoefficientKind::interior);
}

TEST(Coefficients, ZeroCouplingGivesZeroTable) {
    const OhmicBath b{.xi = 0.0, .omega_c = 7.5, .beta = 5.0};
    const auto t = influence_coefficients(b, 0.25, 3, 3);
    for (int kp = 0; kp <= 3; ++kp)
        for (int k = 0; k <= kp; ++k) EXPECT_EQ(t(kp, k), std::complex<double>(0.0, 0.0));
}

class OracleAgreement : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(OracleAgreement, MatchesFullLineQuadrature) {
    const auto [later, earlier] = GetParam();
    for (const auto &bath : {kWeak, kStrong}) {
        const auto got = influence_coefficient(bath, 0.25, 4, later, earlier);
        const auto want = testing::alpha_oracle(bath, 0.25, 4, later, earlier);
        EXPECT_LT(rel(got, want), 1e-6) << "alpha(" << later << "," << earlier << ") got " << got << " want " << want;
    }
}

// One representative of each of the six kinds for N = 4.
INSTANTIATE_TEST_SUITE_P(AllKinds, OracleAgreement,
                         ::testing::Values(std::tuple{3, 1}, std::tuple{2, 2}, std::tuple{4, 0}, std::tuple{0, 0},
                                           std::tuple{4, 4}, std::tuple{3, 0}, std::tuple{4, 2}));

TEST(Coefficients, InteriorDependsOnlyOnSeparation) {
    const auto t = influence_coefficients(kStrong, 0.25, 6, 6);
    for (int d = 1; d <= 3; ++d)
        for (int k = 1; k + d < 6; ++k) EXPECT_LE(std::abs(t(k + d, k) - t(1 + d, 1)), 1e-12 * std::abs(t(1 + d, 1)));
    for (int k = 1; k < 6; ++k) EXPECT_EQ(t(k, k), t(1, 1));
}

TEST(Coefficients, EndpointSelfTermsCoincide) {
    for (int n : {1, 2, 5}) {
        const auto t = influence_coefficients(kWeak, 0.25, n, n);
        EXPECT_EQ(t(0, 0), t(n, n));
    }
}

TEST(Coefficients, LinearInCoupling) {
    OhmicBath b = kWeak;
    const auto base = influence_coefficients(b, 0.25, 3, 3);
    b.xi *= 3.0;
    const auto tripled = influence_coefficients(b, 0.25, 3, 3);
    for (int kp = 0; kp <= 3; ++kp)
        for (int k = 0; k <= kp; ++k) EXPECT_LE(std::abs(tripled(kp, k) - 3.0 * base(kp, k)), 1e-13 * std::abs(tripled(kp, k)));
}

TEST(Coefficients, CutoffDoublingChangesNothing) {
    QuadratureOptions wide;
    wide.cutoff_multiple = 100.0;
    for (const auto &bath : {kWeak, kStrong}) {
        const auto a = influence_coefficients(bath, 0.25, 4, 4);
        const auto b = influence_coefficients(bath, 0.25, 4, 4, wide);
        for (int kp = 0; kp <= 4; ++kp)
            for (int k = 0; k <= kp; ++k) EXPECT_LT(rel(a(kp, k), b(kp, k)), 1e-8);
    }
}

TEST(Coefficients, WindowTruncation) {
    const auto t = influence_coefficients(kWeak, 0.25, 4, 2);
    EXPECT_TRUE(t.in_window(3, 1));
    EXPECT_FALSE(t.in_window(3, 0));
    EXPECT_EQ(t(3, 0), std::complex<double>(0.0, 0.0));
    const auto full = influence_coefficients(kWeak, 0.25, 4, 4);
    EXPECT_EQ(t(3, 1), full(3, 1));
    EXPECT_EQ(t(4, 2), full(4, 2));
}

TEST(Coefficients, RejectsBadWindow) {
    EXPECT_THROW(influence_coefficients(kWeak, 0.25, 3, 4), Error);
    EXPECT_THROW(influence_coefficients(kWeak, 0.25, 0, 1), Error);
    EXPECT_THROW(influence_coefficients(kWeak, -0.1, 3, 3), Error);
    try {
        influence_coefficients(kWeak, 0.25, 3, 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::invalid_argument);
    }
}

TEST(Coefficients, NonConvergedQuadratureIsReported) {
    QuadratureOptions starved;
    starved.max_depth = 0;
    starved.tolerance = 1e-15;
    try {
        influence_coefficients(kStrong, 0.25, 6, 6, starved);
        FAIL() << "expected quadrature_failed";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::quadrature_failed);
    }
}

TEST(CoeffTable, WithEntryReplacesOneSlot) {
    const auto t = influence_coefficients(kWeak, 0.25, 2, 2);
    const auto u = t.with_entry(1, 0, {1.0, 2.0});
    EXPECT_EQ(u(1, 0), std::complex<double>(1.0, 2.0));
    EXPECT_EQ(u(2, 1), t(2, 1));
    EXPECT_THROW(t.with_entry(2, 0, 1.0).with_entry(3, 0, 1.0), Error);
}

TEST(CoeffTable, CsvHasHeaderAndEveryPair) {
    const auto t = influence_coefficients(kWeak, 0.25, 2, 1);
    std::ostringstream out;
    write_coefficients_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "kp,k,re,im");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 5);  // (0,0) (1,0) (1,1) (2,1) (2,2)
}

}  // namespace
}  // namespace pathq
