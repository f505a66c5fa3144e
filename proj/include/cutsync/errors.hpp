#pragma once

#include <stdexcept>
#include <string>

namespace cutsync {

// Machine-readable error codes surfaced by the CLI as JSON error objects.
enum class ErrorCode {
  Disconnected,
  SelfLoop,
  DuplicateEdge,
  NonpositiveWeight,
  EigSolveFailure,
  DimensionMismatch,
  UnsupportedNorm,
  TrivialCycleSpace,
  ConfigInvalid,
  TooLarge,
  GammaMismatch,
  NotAcyclic,
  TopologyNotApplicable,
  DomainError,
  StepTooLarge,
  WindowTooLong,
  NotAnEquilibrium,
  ParseError,
  DisconnectedCase,
  BracketNotFound,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace cutsync
