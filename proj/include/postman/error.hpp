// Copyright 2026 The postman-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace postman {

enum class ErrorCode {
    InvalidGraph,
    InvalidSpec,
    NonUndirectedGraph,
    AsymmetricWeights,
    NotStronglyConnected,
    NoEulerianCircuit,
    NoOddVertices,
    NotPerfectPairing,
    TooManyOddVertices,
    InfeasibleEndpoints,
    UnsupportedCombination,
    SearchBudgetExceeded,
    LengthMismatch,
    IndexOutOfRange,
    TooLarge,
    NoValidSolution,
    ShortcutApplies,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::NonUndirectedGraph: return "NonUndirectedGraph";
        case ErrorCode::AsymmetricWeights: return "AsymmetricWeights";
        case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
        case ErrorCode::NoEulerianCircuit: return "NoEulerianCircuit";
        case ErrorCode::NoOddVertices: return "NoOddVertices";
        case ErrorCode::NotPerfectPairing: return "NotPerfectPairing";
        case ErrorCode::TooManyOddVertices: return "TooManyOddVertices";
        case ErrorCode::InfeasibleEndpoints: return "InfeasibleEndpoints";
        case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NoValidSolution: return "NoValidSolution";
        case ErrorCode::ShortcutApplies: return "ShortcutApplies";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// front-ends can map them to exit statuses without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace postman
