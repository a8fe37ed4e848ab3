#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freight {

enum class ErrorCode {
  // network ingestion
  DuplicateId,
  NonDenseId,
  DanglingEndpoint,
  MissingReverseRail,
  InvalidReverse,
  NonPositiveCapacity,
  InvalidAttribute,
  InvalidEndpointKind,
  TerminalEndpointsSameSide,
  // demand ingestion
  UnknownCentroid,
  NegativeDemand,
  SelfLoopDemand,
  MissingConnector,
  // numerics and solving
  ZeroDenominator,
  Unreachable,
  NonFiniteCost,
  InsufficientSamples,
  InvalidArgument,
  // plumbing
  Parse,
  Io,
  Config,
};

std::string_view to_string(ErrorCode code);

/// Broad failure classes used to map errors onto process exit codes.
enum class ErrorClass { Validation, Solver, Io };

ErrorClass classify(ErrorCode code);

/// Every library failure is reported as a freight::Error. The message is
/// "<Code> <detail>", e.g. "MissingReverseRail link=12: reverse_id 40 is a Road link".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freight
