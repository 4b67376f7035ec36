#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracelab {

enum class ErrorCode {
  DuplicateLabel,
  NonpositiveWeight,
  BothEndpointsCemetery,
  CemeteryInStandardGraph,
  NotAVertex,
  VertexOutOfRange,
  EmptyRootSet,
  TooLargeForDense,
  EmptySet,
  IsolatedVertex,
  NonpositiveTime,
  InvalidTau,
  PreconditionFailed,
  InvalidRange,
  DuplicateSample,
  EmptySample,
  InvalidArgument,
  OddDegreeSum,
  NotADistribution,
  ZeroMean,
  TruncationZero,
  NonConvergence,
  ImproperRule,
  AcceptanceTooLow,
  BoundaryEmpty,
  EmptyStackFamily,
  UnsupportedWeights,
  InvalidLevel,
  ConfigError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace tracelab
