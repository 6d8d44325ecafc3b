#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zne {

enum class ErrorKind {
    kInvalidParameter,
    kDegenerateNodes,
    kNoSolution,
    kInsufficientBudget,
    kDivisionDegenerate,
    kExtrapolationRefused,
    kNumericalIntegration,
    kBiasUnavailable,
    kShape,
    kInvalidMap,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so callers
/// (the CLI in particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInvalidParameter: return "invalid parameter";
        case ErrorKind::kDegenerateNodes: return "degenerate nodes";
        case ErrorKind::kNoSolution: return "no solution";
        case ErrorKind::kInsufficientBudget: return "insufficient budget";
        case ErrorKind::kDivisionDegenerate: return "division degenerate";
        case ErrorKind::kExtrapolationRefused: return "extrapolation refused";
        case ErrorKind::kNumericalIntegration: return "numerical integration";
        case ErrorKind::kBiasUnavailable: return "bias unavailable";
        case ErrorKind::kShape: return "shape mismatch";
        case ErrorKind::kInvalidMap: return "invalid map";
    }
    return "unknown";
}

}  // namespace zne
