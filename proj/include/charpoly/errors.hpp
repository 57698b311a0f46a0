#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charpoly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatchError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

// Enumeration or check size exceeds a resource cap (CLI exit code 3).
class CapExceededError : public Error {
 public:
  using Error::Error;
};

class MalformedLiteralError : public Error {
 public:
  using Error::Error;
};

// Line/column-precise failure while reading a matrix file (1-based).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace charpoly
