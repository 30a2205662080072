#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace achieve {

enum class ErrorCode {
    MixedDimension,
    DimensionMismatch,
    Overflow,
    NotABasis,
    InvalidStep,
    NotALoop,
    NotProper,
    ResolutionCap,
    BudgetExceeded,
    NodeLimit,
    UnsupportedDimension,
    InvalidDecomposition,
    ConstructionInvariantViolated,
    InvalidInput,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Carries the list of violated hypotheses when a decomposition is rejected.
class InvalidDecompositionError : public Error {
public:
    InvalidDecompositionError(std::vector<std::string> violations)
        : Error(ErrorCode::InvalidDecomposition, join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& vs) {
        std::string s = "invalid decomposition:";
        for (const auto& v : vs) {
            s += " [" + v + "]";
        }
        return s;
    }
    std::vector<std::string> violations_;
};

} // namespace achieve
