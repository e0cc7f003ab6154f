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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pathq/pathsum.hpp"

namespace pathq {

struct VerifyOptions {
    SpinBosonModel model{.omega_rabi = 1.0,
                         .dvr_values = {1.0, -1.0},
                         .bath = {.xi = 0.1, .omega_c = 7.5, .beta = 5.0},
                         .dt = 0.25};
    int max_steps = 3;
    /// Perturbs alpha(1, 0) in the table handed to the circuit builder.
    bool corrupt_coefficient = false;
    std::uint64_t seed = 1;
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool passed() const noexcept;
};

/// Small-instance self-check of every stage. Failures are report entries,
/// never exceptions.
VerifyReport verify(const VerifyOptions &options = {});

void write_verify_report(std::ostream &out, const VerifyReport &report);

}  // namespace pathq
