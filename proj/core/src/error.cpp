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

#include "qloop/error.hpp"

namespace qloop {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::PsdViolation: return "PsdViolation";
    case ErrorCode::VanishedState: return "VanishedState";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool is_usage_error(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::BadProbability:
    case ErrorCode::BadDimension:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnknownPreset:
        return true;
    default:
        return false;
    }
}

} // namespace qloop
