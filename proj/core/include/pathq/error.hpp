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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathq {

enum class Errc {
    invalid_argument,
    invalid_config,
    budget_exceeded,
    cap_exceeded,
    quadrature_failed,
    malformed_gate,
    inconsistent_table,
    insufficient_shots,
    io_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries a machine-readable code; the
/// CLI prints it as `error[<code>]: <message>` on stderr.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &message);

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace pathq
