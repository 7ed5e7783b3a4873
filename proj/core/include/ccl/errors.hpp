#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccl {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration value is out of its documented domain.
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

// Two containers that must agree in length/shape do not.
class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

// A series is unusable for scoring (constant, too short, non-finite).
class DegenerateSeriesError : public Error {
 public:
  using Error::Error;
};

// A conditioning set made an independence test numerically singular.
class DegenerateConditioningError : public Error {
 public:
  using Error::Error;
};

// Text input that could not be parsed; carries a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// Filesystem-level failure (missing file, unwritable directory, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccl
