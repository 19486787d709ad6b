// Copyright 2026 The qloop Authors
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

#ifndef QLOOP_ERROR_HPP
#define QLOOP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qloop {

enum class ErrorCode {
    // Input validation (usage errors).
    InvalidConfig,
    BadProbability,
    BadDimension,
    DimensionMismatch,
    UnknownPreset,
    // Numerical contract violations.
    NonHermitianInput,
    NotNormalized,
    PsdViolation,
    VanishedState,
    ContractViolation,
    // Output.
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that stem from bad user input rather than from a broken
/// numerical contract. The CLI maps these to exit code 1, the rest to 2.
bool is_usage_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qloop

#endif // QLOOP_ERROR_HPP
