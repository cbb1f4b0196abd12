#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zmc {

enum class ErrorCode {
    RealityViolation,
    NullityViolation,
    RegularityViolation,
    NotArclength,
    DegenerateCurve,
    OutsideStrip,
    OutsideDomain,
    InversionFailed,
    TimeComponentCritical,
    QuadratureNotConverged,
    NotOnSingularSet,
    CriteriaDisagree,
    DegenerateOnCurve,
    NearBranchPoint,
    OutOfChart,
    NewtonFailed,
    SonicInRect,
    NotConvex,
    InvalidArgument,
    ParseError,
    UnknownName,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::RealityViolation: return "RealityViolation";
    case ErrorCode::NullityViolation: return "NullityViolation";
    case ErrorCode::RegularityViolation: return "RegularityViolation";
    case ErrorCode::NotArclength: return "NotArclength";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::OutsideStrip: return "OutsideStrip";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::InversionFailed: return "InversionFailed";
    case ErrorCode::TimeComponentCritical: return "TimeComponentCritical";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NotOnSingularSet: return "NotOnSingularSet";
    case ErrorCode::CriteriaDisagree: return "CriteriaDisagree";
    case ErrorCode::DegenerateOnCurve: return "DegenerateOnCurve";
    case ErrorCode::NearBranchPoint: return "NearBranchPoint";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::NewtonFailed: return "NewtonFailed";
    case ErrorCode::SonicInRect: return "SonicInRect";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownName: return "UnknownName";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace zmc
