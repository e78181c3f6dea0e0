#pragma once

#include <stdexcept>
#include <string>

namespace rispeb {

// All recoverable failures are typed exceptions. The C API maps each type
// to a stable status code, so new error classes must be added to both.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "parse error (line " + std::to_string(line) + "): " + what
                       : "parse error: " + what) {}
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& field, const std::string& reason)
      : Error("invariant violation: " + field + ": " + reason), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class DegenerateGeometry : public Error {
 public:
  explicit DegenerateGeometry(const std::string& kind)
      : Error("degenerate geometry: " + kind), kind_(kind) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid argument: " + what) {}
};

}  // namespace rispeb
