#include "d4walk/error.hpp"

namespace d4walk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::NegativeQ: return "NegativeQ";
    case ErrorCode::NonIncreasingQ: return "NonIncreasingQ";
    case ErrorCode::NonPositiveA: return "NonPositiveA";
    case ErrorCode::DiameterNot4: return "DiameterNot4";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::RootNotConverged: return "RootNotConverged";
    case ErrorCode::InterlacingViolated: return "InterlacingViolated";
    case ErrorCode::NotStronglyCospectral: return "NotStronglyCospectral";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::ConditionsViolated: return "ConditionsViolated";
    case ErrorCode::EvenK: return "EvenK";
    case ErrorCode::EpsilonRange: return "EpsilonRange";
    case ErrorCode::NoPgst: return "NoPgst";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace d4walk
