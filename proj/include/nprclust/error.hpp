#pragma once

#include <stdexcept>
#include <string>

namespace nprc {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  DisconnectedGraph,
  SelfLoop,
  DuplicateEdge,
  NonpositiveWeight,
  EmptyOrFullSet,
  DimensionMismatch,
  SolverFailure,
  SizeExceeded,
  LinearSolveFailure,
  ParseError,
  IoError,
  EmptyInput,
  EmptyTruth,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures carry the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError,
              source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nprc
