#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arminer {

// Base for every error raised by the library. `DataError`s stem from bad
// input (files, values); `ContractViolation`s indicate a caller broke a
// precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EncodingError : public DataError {
 public:
  using DataError::DataError;
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class LookupError : public DataError {
 public:
  using DataError::DataError;
};

// Raised when a support map lacks the support of some subset of a stored
// itemset.
class ClosureViolation : public DataError {
 public:
  using DataError::DataError;
};

// The exhaustive oracle refuses item universes above its enumeration bound.
class BoundExceeded : public DataError {
 public:
  using DataError::DataError;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace arminer
