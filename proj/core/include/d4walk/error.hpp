#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace d4walk {

enum class ErrorCode {
  // tree-model
  InvalidShape,
  NegativeQ,
  NonIncreasingQ,
  NonPositiveA,
  DiameterNot4,
  VertexOutOfRange,
  // spectrum
  RootNotConverged,
  InterlacingViolated,
  // cospectrality / evolution
  NotStronglyCospectral,
  UnknownFamily,
  // readout
  ParityViolation,
  ConditionsViolated,
  EvenK,
  EpsilonRange,
  NoPgst,
  InvalidArgument,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` names the
// violated contract so callers (the CLI in particular) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace d4walk
