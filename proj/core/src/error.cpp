#include "tracelab/error.hpp"

namespace tracelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::BothEndpointsCemetery: return "BothEndpointsCemetery";
    case ErrorCode::CemeteryInStandardGraph: return "CemeteryInStandardGraph";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::EmptyRootSet: return "EmptyRootSet";
    case ErrorCode::TooLargeForDense: return "TooLargeForDense";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NonpositiveTime: return "NonpositiveTime";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::DuplicateSample: return "DuplicateSample";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OddDegreeSum: return "OddDegreeSum";
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::TruncationZero: return "TruncationZero";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ImproperRule: return "ImproperRule";
    case ErrorCode::AcceptanceTooLow: return "AcceptanceTooLow";
    case ErrorCode::BoundaryEmpty: return "BoundaryEmpty";
    case ErrorCode::EmptyStackFamily: return "EmptyStackFamily";
    case ErrorCode::UnsupportedWeights: return "UnsupportedWeights";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tracelab
