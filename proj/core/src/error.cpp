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

#include "pathq/error.hpp"

namespace pathq {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::invalid_config: return "invalid_config";
        case Errc::budget_exceeded: return "budget_exceeded";
        case Errc::cap_exceeded: return "cap_exceeded";
        case Errc::quadrature_failed: return "quadrature_failed";
        case Errc::malformed_gate: return "malformed_gate";
        case Errc::inconsistent_table: return "inconsistent_table";
        case Errc::insufficient_shots: return "insufficient_shots";
        case Errc::io_error: return "io_error";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string &message) : std::runtime_error(message), code_(code) {}

}  // namespace pathq
