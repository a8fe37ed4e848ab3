#include "freight/error.hpp"

namespace freight {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonDenseId: return "NonDenseId";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::MissingReverseRail: return "MissingReverseRail";
    case ErrorCode::InvalidReverse: return "InvalidReverse";
    case ErrorCode::NonPositiveCapacity: return "NonPositiveCapacity";
    case ErrorCode::InvalidAttribute: return "InvalidAttribute";
    case ErrorCode::InvalidEndpointKind: return "InvalidEndpointKind";
    case ErrorCode::TerminalEndpointsSameSide: return "TerminalEndpointsSameSide";
    case ErrorCode::UnknownCentroid: return "UnknownCentroid";
    case ErrorCode::NegativeDemand: return "NegativeDemand";
    case ErrorCode::SelfLoopDemand: return "SelfLoopDemand";
    case ErrorCode::MissingConnector: return "MissingConnector";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NonFiniteCost: return "NonFiniteCost";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator:
    case ErrorCode::NonFiniteCost:
    case ErrorCode::InsufficientSamples:
    case ErrorCode::Unreachable:
      return ErrorClass::Solver;
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse:
    case ErrorCode::Io:
    case ErrorCode::Config:
      return ErrorClass::Io;
    default:
      return ErrorClass::Validation;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + " " + detail), code_(code) {}

}  // namespace freight
