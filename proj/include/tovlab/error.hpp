#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tovlab {

enum class ErrorCode {
  InvalidArgument = 1,
  NonFiniteSample,
  NoConvergence,
  NoSignChange,
  TooCloseToSingularity,
  EmptyDomain,
  HorizonSingularity,
  OriginSingularity,
  DegenerateDenominator,
  ZeroC,
  ZeroH,
  ZeroDenominator,
  PathCrossesSingularity,
  UnknownRow,
  SingularRadius,
  DomainMismatch,
  UnresolvedRoot,
  BracketExpansionFailed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace tovlab
