#pragma once

#include <stdexcept>
#include <string>

namespace claimcheck {

// Base for all recoverable failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input record. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  // Same error with a location prefix such as the file name.
  ParseError(const std::string& prefix, const ParseError& inner)
      : Error(prefix + ": " + inner.what()), line_(inner.line_) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class MissingProbabilityError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace claimcheck
