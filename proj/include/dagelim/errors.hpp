#pragma once

#include <stdexcept>
#include <string>

namespace dagelim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CycleError : Error {
  using Error::Error;
};

struct IsolatedVertexError : Error {
  using Error::Error;
};

// Parse failure; carries the 1-based input line.
struct SyntaxError : Error {
  int line;
  SyntaxError(const std::string& what, int line_no)
      : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct NotInternalError : Error {
  using Error::Error;
};

struct NotPresentError : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

struct NotSeparableError : Error {
  using Error::Error;
};

struct InvalidSeparatorError : Error {
  using Error::Error;
};

struct InvalidParamsError : Error {
  using Error::Error;
};

struct NonIntegralError : Error {
  using Error::Error;
};

struct InconsistentOrderError : Error {
  using Error::Error;
};

struct ReplayMismatchError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace dagelim
