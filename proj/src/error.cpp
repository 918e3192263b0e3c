#include "tovlab/error.hpp"

namespace tovlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::TooCloseToSingularity: return "TooCloseToSingularity";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::HorizonSingularity: return "HorizonSingularity";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ZeroC: return "ZeroC";
    case ErrorCode::ZeroH: return "ZeroH";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::PathCrossesSingularity: return "PathCrossesSingularity";
    case ErrorCode::UnknownRow: return "UnknownRow";
    case ErrorCode::SingularRadius: return "SingularRadius";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::UnresolvedRoot: return "UnresolvedRoot";
    case ErrorCode::BracketExpansionFailed: return "BracketExpansionFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tovlab
