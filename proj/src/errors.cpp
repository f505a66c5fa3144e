#include "cutsync/errors.hpp"

namespace cutsync {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::EigSolveFailure: return "EigSolveFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedNorm: return "UnsupportedNorm";
    case ErrorCode::TrivialCycleSpace: return "TrivialCycleSpace";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::GammaMismatch: return "GammaMismatch";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::TopologyNotApplicable: return "TopologyNotApplicable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::NotAnEquilibrium: return "NotAnEquilibrium";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DisconnectedCase: return "DisconnectedCase";
    case ErrorCode::BracketNotFound: return "BracketNotFound";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cutsync
