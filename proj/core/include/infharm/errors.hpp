#pragma once

#include <stdexcept>
#include <string>

namespace infharm {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on the number of coordinates, or an index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The requested operation leaves the expression class the engine can decide.
class UnsupportedExpression : public Error {
 public:
  using Error::Error;
};

/// A structural invariant of the input is violated (asymmetric matrix, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input. `path` names the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// No classification theorem covers the requested (domain, codomain, family).
class UnsupportedPair : public Error {
 public:
  using Error::Error;
};

}  // namespace infharm
