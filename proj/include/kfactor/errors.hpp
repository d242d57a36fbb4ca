#pragma once

#include <stdexcept>
#include <string>

namespace kfactor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based, 0 when not tied to a line.
class InputFormatError : public Error {
 public:
  InputFormatError(const std::string& what, long line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Input graph violates an operation's hypothesis.
class RejectedInput : public Error {
 public:
  using Error::Error;
};

class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

// A self-check failed. Always a bug or a constant violation, never user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kfactor
