#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perfectoid {

/// Stable error identifiers. The CLI maps these onto exit codes and prints
/// the name verbatim, so existing names must never change.
enum class ErrorCode {
    DepthExceeded,
    PrecisionIndeterminate,
    CeilingExceeded,
    NotDivisible,
    NoStabilization,
    UnboundedRegion,
    EmptyIntersection,
    DomainMismatch,
    NotRepresentable,
    PoleAtPoint,
    DegenerateDenominator,
    NoRootsAvailable,
    NoRootCertificate,
    SyntaxError,
    InvalidExponent,
    SideMismatch,
    Overflow,
    Usage,
};

constexpr std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DepthExceeded: return "DepthExceeded";
        case ErrorCode::PrecisionIndeterminate: return "PrecisionIndeterminate";
        case ErrorCode::CeilingExceeded: return "CeilingExceeded";
        case ErrorCode::NotDivisible: return "NotDivisible";
        case ErrorCode::NoStabilization: return "NoStabilization";
        case ErrorCode::UnboundedRegion: return "UnboundedRegion";
        case ErrorCode::EmptyIntersection: return "EmptyIntersection";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::PoleAtPoint: return "PoleAtPoint";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::NoRootsAvailable: return "NoRootsAvailable";
        case ErrorCode::NoRootCertificate: return "NoRootCertificate";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::InvalidExponent: return "InvalidExponent";
        case ErrorCode::SideMismatch: return "SideMismatch";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace perfectoid
