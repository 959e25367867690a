#pragma once

#include <stdexcept>
#include <string>

namespace rkdre {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or size mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure broke down (overflow, singular solve, instability).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rkdre
