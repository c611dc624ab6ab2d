#pragma once

#include <stdexcept>
#include <string>

namespace landcore {

// Base of every error raised by the library. The CLI maps the concrete
// type to an exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented invariant or precondition.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Input polygons do not form a planar partition (overlapping interiors).
class PartitionError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Shared boundaries disagree beyond the snapping tolerance.
class SnappingError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// A stored structure references something that does not exist or does
// not close.
class IntegrityError : public Error {
public:
  using Error::Error;
};

// Survey data is incomplete for the requested estimate.
class DataError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotFoundError : public Error {
public:
  using Error::Error;
};

class TriangulationError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError("parse error at line " + std::to_string(line) +
                        ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace landcore
