#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradedrel {

enum class ErrorCode {
  StructuralInput,   // shape/dimension mismatch
  RejectedInput,     // well-formed but violates a validity requirement
  IndexOutOfRange,
  UndefinedInput,    // operation undefined for this input (e.g. too few points)
  Usage,
  Resource,          // configured cap exceeded
  Precondition,
  Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Location-carrying diagnostic emitted by the file parsers.
struct Diagnostic {
  std::string code;  // e.g. "E_RANGE"
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic diag) : Error(ErrorCode::Parse, diag.to_string()), diag_(std::move(diag)) {}
  const Diagnostic& diagnostic() const noexcept { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace gradedrel
